import pytest

from pilift import structure as st
from pilift.gallery import alternating, symmetric
from pilift.perm import Perm
from pilift.primes import PrimeSet

from conftest import brute_subgroups

SMALL = ["C6", "S3", "S4", "A4", "D8", "Q8", "SL(2,3)", "C7:C3", "C5:C4", "A4xC3"]


def as_set(H):
    return frozenset(H.element_list())


def is_normal_brute(G, S):
    return all((s ^ g) in S for s in S for g in G.element_list())


@pytest.fixture(scope="module")
def lattices(corpus):
    return {name: brute_subgroups(corpus[name]) for name in SMALL}


@pytest.mark.parametrize("name", SMALL)
def test_normal_subgroups_brute(corpus, lattices, name):
    G = corpus[name]
    expected = {S for S in lattices[name] if is_normal_brute(G, S)}
    assert {as_set(N) for N in st.normal_subgroups(G)} == expected


def _subnormal_brute(G, subs):
    # S is subnormal iff S = G or S is subnormal in a proper normal subgroup containing it
    def normal_in(N, K):
        return N <= K and all(k.inverse() * n * k in N for n in N for k in K)

    def sub_in(S, K):
        return S == K or any(S <= N < K and normal_in(N, K) and sub_in(S, N) for N in subs)

    full = frozenset(G.element_list())
    return {S for S in subs if sub_in(S, full)}


@pytest.mark.parametrize("name", ["S3", "S4", "A4", "D8", "Q8", "C5:C4"])
def test_subnormal_subgroups_brute(corpus, lattices, name):
    G = corpus[name]
    expected = _subnormal_brute(G, lattices[name])
    assert {as_set(S) for S in st.subnormal_subgroups(G)} == expected


@pytest.mark.parametrize("name", SMALL)
def test_chief_series(corpus, name):
    G = corpus[name]
    series = st.chief_series(G)
    assert series[0].order == 1 and series[-1].order == G.order
    normals = st.normal_subgroups(G)
    for A, B in zip(series, series[1:]):
        assert st.is_normal(G, A) and st.is_subgroup(B, A) and A.order < B.order
        # nothing normal strictly between
        assert not any(A.order < N.order < B.order and st.is_subgroup(N, A) and st.is_subgroup(B, N)
                       for N in normals)


def test_chief_factor_orders(corpus):
    assert sorted(st.chief_factor_orders(corpus["S4"])) == [2, 3, 4]
    assert sorted(st.chief_factor_orders(corpus["SL(2,3)"])) == [2, 3, 4]
    assert sorted(st.chief_factor_orders(corpus["U1"])) == [2, 3, 3, 4, 4]


def test_pi_separable():
    A5 = alternating(5)
    assert not st.is_pi_separable(A5, PrimeSet.of([2]))
    assert st.is_pi_separable(A5, PrimeSet.all())
    assert st.is_pi_separable(symmetric(4), PrimeSet.of([3]))


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("pi", ["2", "3", "2,3", "5", "7"])
def test_o_pi_brute(corpus, name, pi):
    G = corpus[name]
    pi = PrimeSet.parse(pi)
    normal_pi = [N for N in st.normal_subgroups(G) if pi.is_pi_number(N.order)]
    best = max(normal_pi, key=lambda N: N.order)
    assert all(st.is_subgroup(best, N) for N in normal_pi)
    assert st.o_pi(G, pi) == best


def test_o_pi_example(S3):
    assert st.o_pi(S3, PrimeSet.of([3])).order == 3


@pytest.mark.parametrize("name", SMALL + ["U1"])
@pytest.mark.parametrize("pi", ["2", "3", "2,5", "^2"])
def test_hall_subgroups(corpus, name, pi):
    G = corpus[name]
    pi = PrimeSet.parse(pi)
    H = st.hall_pi_subgroup(G, pi)
    assert H.order == pi.part(G.order)
    assert st.is_subgroup(G, H)


def test_core_normalizer_centralizer(corpus):
    G = corpus["S4"]
    H = G.subgroup([Perm.parse("(1,2,3,4)", 4), Perm.parse("(1,3)", 4)])
    elems = G.element_list()
    core = [h for h in H.element_list() if all((h ^ g) in H for g in elems)]
    assert as_set(st.core(G, H)) == frozenset(core)
    norm = [g for g in elems if all((h ^ g) in H for h in H.gens)]
    assert as_set(st.normalizer(G, H)) == frozenset(norm)
    x = Perm.parse("(1,2)(3,4)", 4)
    cent = [g for g in elems if g * x == x * g]
    assert as_set(st.centralizer(G, x)) == frozenset(cent)


def test_subnormality_examples(corpus):
    D8 = corpus["D8"]
    reflection = D8.subgroup([Perm.parse("(2,4)", 4)])
    assert st.is_subnormal(D8, reflection)
    assert not st.is_normal(D8, reflection)
    S4 = corpus["S4"]
    assert not st.is_subnormal(S4, S4.subgroup([Perm.parse("(1,2)", 4)]))


@pytest.mark.parametrize("name,q", [("S4", 3), ("S4", 2), ("A4", 2), ("A4", 3), ("C5:C4", 5), ("A4xC3", 3)])
def test_maximal_prime_power_index_brute(corpus, lattices, name, q):
    G = corpus[name]
    subs = lattices[name]
    full = frozenset(G.element_list())
    maximal = [S for S in subs if S != full and not any(S < T < full for T in subs)]
    pi = PrimeSet.of([q])
    wanted = [S for S in maximal if pi.is_pi_number(G.order // len(S))]
    got = st.maximal_subgroups_of_prime_power_index(G, q)
    # one representative per conjugacy class of such maximal subgroups
    classes = []
    for S in wanted:
        conj = {frozenset(s ^ g for s in S) for g in G.element_list()}
        if conj not in classes:
            classes.append(conj)
    assert len(got) == len(classes)
    assert all(any(as_set(H) in c for H in got) for c in classes)


def test_quotient(corpus):
    G = corpus["S4"]
    V = [N for N in st.normal_subgroups(G) if N.order == 4][0]
    q = st.quotient(G, V)
    assert q.image.order == 6 and not q.image.is_abelian()
    with pytest.raises(st.NotNormalError):
        st.quotient(G, G.subgroup([Perm.parse("(1,2)", 4)]))


def test_product_and_isomorphism(corpus):
    S4 = corpus["S4"]
    A4 = [N for N in st.normal_subgroups(S4) if N.order == 12][0]
    t = S4.subgroup([Perm.parse("(1,2)", 4)])
    assert st.product_set_equals(A4, t, S4)
    assert st.check_isomorphism(S4, list(S4.gens), symmetric(4))
