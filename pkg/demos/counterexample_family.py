"""The U1 / Gamma family, a small coset-module extension, and the probe."""

from pilift import gallery as gl
from pilift.nucleus import lift_summary
from pilift.perm import Perm
from pilift.primes import PrimeSet

fam = gl.build_section3("gamma")
for claim, ok in fam.claims:
    print(f"{'ok  ' if ok else 'FAIL'} {claim}")
print("full scale (not built):", gl.full_scale_size())

S3 = gl.symmetric(3)
L = S3.subgroup([Perm.parse("(1,2)", 3)])
ext = gl.coset_module_extension(gl.ModuleExtensionSpec(S3, L, 3))
print(f"\nE x| Sym(3): order {ext.group.order}, stabilizer of theta {ext.stabilizer.order}")
print("lift summary for pi = {3}:", lift_summary(ext.group, PrimeSet.of([3])))

print("\nprobe:")
for r in gl.mini_counterexample_probe():
    tag = "FINDING" if r.finding else "equal"
    print(f"  {r.name:34} |G| = {r.order:4d}  B = {r.b_pi:3d}  N = {r.n_pi:3d}  {tag}")
