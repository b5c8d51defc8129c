import pytest

from pilift import gallery as gl
from pilift import structure as stc
from pilift.config import GuardError
from pilift.perm import Perm
from pilift.pitheory import is_pi_special, pi_special_extension
from pilift.primes import PrimeSet

P3 = PrimeSet.of([3])


@pytest.mark.parametrize("G,order", [
    (gl.symmetric(5), 120), (gl.alternating(5), 60), (gl.cyclic(9), 9), (gl.dihedral(6), 12),
    (gl.quaternion(), 8), (gl.frobenius(7, 3), 21), (gl.frobenius(11, 5), 55),
    (gl.direct_product(gl.symmetric(3), gl.symmetric(3)), 36),
])
def test_constructor_orders(G, order):
    assert G.order == order


def test_sl23_is_not_s4():
    G = gl.sl23()
    assert G.order == 24
    # a unique involution, central, and quaternion Sylow 2-subgroup
    involutions = [g for g in G.element_list() if g.order() == 2]
    assert len(involutions) == 1
    assert stc.centralizer(G, involutions[0]).order == 24
    P = stc.sylow_subgroup(G, 2)
    assert not P.is_abelian() and sum(1 for g in P.element_list() if g.order() == 2) == 1


def test_semidirect_rejects_non_homomorphisms():
    A = gl.cyclic(3)
    B = gl.cyclic(2)
    a = A.gens[0]
    with pytest.raises(gl.SpecError):
        gl.semidirect_product(gl.ActionSpec(B, A, [[a * a * a]]))
    # x -> x^2 has order 4 on C5, so C3 cannot act through it
    C5 = gl.cyclic(5)
    with pytest.raises(gl.SpecError):
        gl.semidirect_product(gl.ActionSpec(gl.cyclic(3), C5, [[C5.gens[0] ** 2]]))


def test_semidirect_dihedral():
    A = gl.cyclic(5)
    B = gl.cyclic(2)
    G = gl.semidirect_product(gl.ActionSpec(B, A, [[A.gens[0].inverse()]]))
    assert G.order == 10 and not G.is_abelian()


def test_u1_faithful_on_twelve_points():
    fam = gl.counterexample_family()
    U1 = fam.U1
    assert U1.degree == 12 and U1.order == 288
    # brute force: only the identity fixes every point
    X = U1.elements
    fixing = (X == list(range(12))).all(axis=1).sum()
    assert fixing == 1


def test_wreath_order():
    fam = gl.counterexample_family(with_gamma=True)
    assert fam.Gamma.order == 2 * 288 ** 2 == 165888
    assert gl.wreath_by_swap(gl.symmetric(3)).order == 72


@pytest.mark.parametrize("scale", ["mini", "gamma"])
def test_claims_pass(scale):
    fam = gl.build_section3(scale)
    assert fam.ok
    names = [c for c, _ in fam.claims]
    assert "|H1 : L1| = 3" in names
    if scale == "gamma":
        assert "O3(Gamma) = 1" in names and "core_Gamma(L1) = 1" in names


def test_core_of_l1_in_u1_is_nontrivial():
    fam = gl.counterexample_family()
    core = stc.core(fam.U1, fam.L1)
    assert core.order > 1 and stc.is_subgroup(core, fam.K1)


def test_bad_scale():
    with pytest.raises(ValueError):
        gl.build_section3("full")


def test_full_scale_is_reported_not_built():
    info = gl.full_scale_size()
    assert info["gamma_order"] == 165888 and info["E_order"] == "3^165888"


def test_module_extension_s3():
    S3 = gl.symmetric(3)
    L = S3.subgroup([Perm.parse("(1,2)", 3)])
    ext = gl.coset_module_extension(gl.ModuleExtensionSpec(S3, L, 3))
    assert ext.group.order == 162 and ext.stabilizer.order == 54
    assert ext.stabilizer == ext.L
    assert is_pi_special(ext.theta, P3)
    # theta is invariant in E L with 2-index, so it has a unique pi-special extension there
    hat = pi_special_extension(ext.L, ext.E, ext.theta, P3)
    assert hat.restrict(ext.E) == ext.theta


def test_module_extension_small_cases():
    C2 = gl.cyclic(2)
    ext = gl.coset_module_extension(gl.ModuleExtensionSpec(C2, stc.trivial(C2), 3))
    assert ext.group.order == 18 and ext.stabilizer.order == 9
    S3 = gl.symmetric(3)
    whole = gl.coset_module_extension(gl.ModuleExtensionSpec(S3, S3, 3))
    assert whole.d == 1 and whole.stabilizer.order == whole.group.order == 18


def test_module_guard():
    S4 = gl.symmetric(4)
    with pytest.raises(GuardError, match="3\\^165888"):
        gl.coset_module_extension(gl.ModuleExtensionSpec(S4, stc.trivial(S4), 3))
    C2 = gl.cyclic(2)
    with pytest.raises(GuardError):
        gl.coset_module_extension(gl.ModuleExtensionSpec(C2, stc.trivial(C2), 7))


def test_probe():
    results = gl.mini_counterexample_probe()
    assert len([r for r in results if not r.skipped]) >= 5
    for r in results:
        if r.forced_equal:
            assert not r.only_b and not r.only_n
        assert r.b_restriction_violations == 0
        assert set(r.as_dict()) >= {"name", "order", "b_pi", "n_pi", "only_b", "only_n"}


def test_probe_records_guard_refusals():
    S4 = gl.symmetric(4)
    cand = gl.ProbeCandidate("too big", S4, stc.trivial(S4), 3, P3)
    (r,) = gl.mini_counterexample_probe([cand])
    assert r.skipped and not r.finding


def test_parse_candidates(tmp_path):
    from pilift.corpus import entry
    (tmp_path / "s3.grp").write_text(entry("S3").text())
    text = "# comment\ns3.grp ; (1,2) ; 3 ; 3\ns3.grp ; ; 2,3 ; 2\n"
    cands = gl.parse_candidates(text, tmp_path)
    assert [c.subgroup.order for c in cands] == [2, 1]
    assert [c.p for c in cands] == [3, 2]
    with pytest.raises(gl.SpecError):
        gl.parse_candidates("s3.grp ; (1,2)\n", tmp_path)
    with pytest.raises(gl.SpecError):
        gl.parse_candidates("s3.grp ; (1,7) ; 3 ; 3\n", tmp_path)
