import pytest
from hypothesis import given, settings, strategies as st

from pilift import structure as stc
from pilift.chartable import character_table, irr
from pilift.gallery import alternating
from pilift.perm import Perm
from pilift.pitheory import (PreconditionError, delta_sign, i_pi, is_pi_factorable, is_pi_special,
                             is_pi_special_bruteforce, lifts, pi_classes, pi_factorize,
                             pi_special_characters, pi_special_extension, restrict_to_pi_elements)
from pilift.primes import PrimeSet

from conftest import PI_LIST

P3 = PrimeSet.of([3])
P2 = PrimeSet.of([2])



def test_everything_special_for_all_primes(corpus):
    for G in corpus.values():
        assert len(pi_special_characters(G, PrimeSet.all())) == len(irr(G))


def test_a4_examples(corpus):
    A4 = corpus["A4"]
    deg3 = [chi for chi in irr(A4) if chi.degree == 3][0]
    v = is_pi_special(deg3, P3)
    assert not v and v.witness_order == 4 and v.witness_det_order == 2
    assert all(is_pi_special(chi, P3) for chi in irr(A4) if chi.is_linear())


def test_s3_special_sets(S3):
    assert [chi.degree for chi in pi_special_characters(S3, P3)] == [1]
    two = pi_special_characters(S3, P2)
    assert sorted(chi.degree for chi in two) == [1, 1]


def test_degree_witness(S3):
    deg2 = [chi for chi in irr(S3) if chi.degree == 2][0]
    v = is_pi_special(deg2, P3)
    assert not v and "degree" in v.reason


def test_non_separable_rejected():
    A5 = alternating(5)
    with pytest.raises(PreconditionError):
        is_pi_special(irr(A5)[0], P2)


@pytest.mark.parametrize("name", ["C6", "S3", "S4", "A4", "D8", "Q8", "SL(2,3)", "C7:C3", "C5:C4", "A4xC3"])
@pytest.mark.parametrize("pi", PI_LIST + ["7", "2,7"])
def test_chief_series_matches_brute_force(corpus, name, pi):
    G = corpus[name]
    pi = PrimeSet.parse(pi)
    for chi in irr(G):
        assert bool(is_pi_special(chi, pi)) == bool(is_pi_special_bruteforce(chi, pi))


def test_factorization_examples(corpus, S3):
    deg2 = [chi for chi in irr(S3) if chi.degree == 2][0]
    assert pi_factorize(deg2, P3) is None
    C6 = corpus["C6"]
    for chi in irr(C6):
        a, b = pi_factorize(chi, P3)
        assert a * b == chi
        assert 3 % a.linear_order() == 0 or a.linear_order() == 1
        assert b.linear_order() in (1, 2)
    sign = [chi for chi in irr(S3) if chi.is_linear() and not chi.is_trivial()][0]
    assert pi_factorize(sign, P3) == (irr(S3)[0], sign)


@pytest.mark.parametrize("name", ["S4", "SL(2,3)", "A4xC3", "C5:C4", "U1"])
@pytest.mark.parametrize("pi", ["2", "3", "2,5"])
def test_factorization_brute_force(corpus, name, pi):
    G = corpus[name]
    pi = PrimeSet.parse(pi)
    alphas = [a for a in irr(G) if is_pi_special(a, pi)]
    betas = [b for b in irr(G) if is_pi_special(b, pi.complement())]
    for chi in irr(G):
        pairs = [(a, b) for a in alphas for b in betas if a * b == chi]
        assert len(pairs) <= 1
        assert pi_factorize(chi, pi) == (pairs[0] if pairs else None)


def test_special_extension(corpus):
    C6 = corpus["C6"]
    C3 = [N for N in stc.normal_subgroups(C6) if N.order == 3][0]
    gamma = [chi for chi in irr(C3) if not chi.is_trivial()][0]
    ext = pi_special_extension(C6, C3, gamma, P3)
    assert ext.restrict(C3) == gamma and ext.linear_order() == 3
    assert pi_special_extension(C3, C3, gamma, P3) == gamma


def test_special_extension_pi_quotient(corpus):
    S4 = corpus["S4"]
    V = [N for N in stc.normal_subgroups(S4) if N.order == 4][0]
    A4 = [N for N in stc.normal_subgroups(S4) if N.order == 12][0]
    triv = irr(V)[0]
    over = pi_special_extension(S4, V, triv, PrimeSet.of([2, 3]))
    assert len(over) == 3
    with pytest.raises(PreconditionError):
        pi_special_extension(S4, A4, [c for c in irr(A4) if c.degree == 3][0], P2)


def test_partial_characters_s3(S3):
    pc = pi_classes(S3, P3)
    assert [S3.classes.orders[i] for i in pc.classes] == [1, 3]
    values = {tuple(int(v) for v in phi.values) for phi in i_pi(S3, P3)}
    assert values == {(1, 1), (2, -1)}
    triv = restrict_to_pi_elements(irr(S3)[0], P3)
    assert len(lifts(triv)) == 2


@pytest.mark.parametrize("name", ["S4", "U1", "C5:C4"])
def test_i_pi_full_for_all_primes(corpus, name):
    G = corpus[name]
    phis = i_pi(G, PrimeSet.all())
    assert len(phis) == len(irr(G))
    assert all(len(lifts(phi)) == 1 for phi in phis)


def test_distinct_special_characters_restrict_distinctly(corpus):
    for G in corpus.values():
        for pi in map(PrimeSet.parse, PI_LIST):
            sp = pi_special_characters(G, pi)
            images = {restrict_to_pi_elements(chi, pi).values for chi in sp}
            assert len(images) == len(sp)


def test_delta_sign_examples(S3, corpus):
    t = S3.subgroup([Perm.parse("(1,2)", 3)])
    d = delta_sign(S3, t, P3)
    assert not d.is_trivial() and d.is_linear()
    # normal maximal subgroup of pi-index: trivial sign
    C7C3 = corpus["C7:C3"]
    N = [N for N in stc.normal_subgroups(C7C3) if N.order == 7][0]
    assert delta_sign(C7C3, N, P3).is_trivial()


def test_delta_sign_preconditions(S3, corpus):
    t = S3.subgroup([Perm.parse("(1,2)", 3)])
    with pytest.raises(PreconditionError, match="2 outside"):
        delta_sign(S3, t, P2)
    with pytest.raises(PreconditionError, match="index"):
        delta_sign(S3, t, PrimeSet.of([5]))
    with pytest.raises(PreconditionError, match="maximal"):
        G = corpus["C7:C3"]
        delta_sign(G, stc.trivial(G), PrimeSet.of([3, 7]))


def test_delta_sign_on_counterexample_family():
    from pilift.gallery import counterexample_family
    fam = counterexample_family()
    d = delta_sign(fam.H1, fam.L1, P3)
    assert not d.is_trivial()
    assert set(fam.L1.classes_of(fam.K1.elements)) <= set(d.kernel_classes())


@given(st.sampled_from(["S4", "SL(2,3)", "A4xC3", "C5:C4"]), st.sampled_from(PI_LIST))
@settings(max_examples=30, deadline=None)
def test_products_of_special_are_irreducible(name, pi):
    from pilift.corpus import entry
    G = entry(name).group()
    pi = PrimeSet.parse(pi)
    alphas = [a for a in irr(G) if is_pi_special(a, pi)]
    betas = [b for b in irr(G) if is_pi_special(b, pi.complement())]
    prods = [a * b for a in alphas for b in betas]
    assert all(character_table(G).is_irreducible(x) for x in prods)
    assert len(set(prods)) == len(prods)
    assert all(is_pi_factorable(x, pi) for x in prods)
