"""Sym(3) with pi = {3}: table, pi-special characters, nuclei and the lift sets."""

from pilift.chartable import character_table
from pilift.corpus import entry
from pilift.nucleus import NORMAL, SUBNORMAL, b_pi, n_pi, nucleus
from pilift.pitheory import i_pi, is_pi_special
from pilift.primes import PrimeSet

G = entry("S3").group()
pi = PrimeSet.of([3])
tab = character_table(G)

print("classes:", [r.to_cycle_string() for r in G.classes.reps])
for i, chi in enumerate(tab):
    v = is_pi_special(chi, pi)
    values = ", ".join(map(str, chi.values))
    print(f"chi[{i}] = ({values})  pi-special: {v.special}  {v.reason}")

for i, chi in enumerate(tab):
    cert = nucleus(G, chi, pi, NORMAL)
    U, eps = cert.terminal
    Q, delta = cert.vertex
    print(f"chi[{i}]: normal nucleus of order {U.order}, vertex |Q| = {Q.order},"
          f" delta trivial: {delta.is_trivial()}")
    sub = nucleus(G, chi, pi, SUBNORMAL)
    print(f"        subnormal nucleus of order {sub.terminal[0].order}, in B_pi: {sub.in_B_pi}")

print("B_pi:", [tab.index(c) for c in b_pi(G, pi)])
print("N_pi:", [tab.index(c) for c in n_pi(G, pi)])
print("I_pi:", [str(phi) for phi in i_pi(G, pi)])
