"""Sizes of B_pi, N_pi and I_pi for every corpus group and prime set."""

from pilift.corpus import CORPUS
from pilift.nucleus import b_pi, lift_summary, n_pi

print(f"{'group':8} {'pi':5} {'|G|':>4} {'B':>3} {'N':>3} {'I':>3}  B = N")
for e in CORPUS:
    G = e.group()
    for pi in e.prime_sets():
        s = lift_summary(G, pi)
        same = set(b_pi(G, pi)) == set(n_pi(G, pi))
        print(f"{e.name:8} {pi.label():5} {G.order:4d} {s['b_pi']:3d} {s['n_pi']:3d} {s['i_pi']:3d}  {same}")
