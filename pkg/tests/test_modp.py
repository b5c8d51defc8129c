import itertools

import numpy as np
from hypothesis import given, settings, strategies as st

from pilift.modp import charpoly, choose_prime, nullspace, primitive_root, roots, root_of_unity, rref
from pilift.primes import is_prime
from pilift.perm import Perm

P = 101


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(lambda rc: st.lists(
        st.integers(0, P - 1), min_size=rc[0] * rc[1], max_size=rc[0] * rc[1]).map(
        lambda v: np.array(v, dtype=np.int64).reshape(rc)))


def brute_det(A, p):
    n = len(A)
    total = 0
    for s in itertools.permutations(range(n)):
        term = Perm(s).sign()
        for i in range(n):
            term = term * int(A[i][s[i]]) % p
        total += term
    return total % p


def test_choose_prime():
    p = choose_prime(12, 1000)
    assert is_prime(p) and p % 12 == 1 and p > 1000


def test_roots_of_unity():
    p = choose_prime(8, 50)
    g = primitive_root(p)
    assert all(pow(g, (p - 1) // q, p) != 1 for q in {2, 3, 5, 7, 11, 13} if (p - 1) % q == 0)
    w = root_of_unity(p, 8)
    assert pow(w, 8, p) == 1 and pow(w, 4, p) != 1


@given(matrices())
@settings(max_examples=60)
def test_nullspace(A):
    N = nullspace(A, P)
    R, piv = rref(A, P)
    assert len(piv) + N.shape[1] == A.shape[1]
    assert not ((A @ N) % P).any()


@given(st.integers(1, 4).flatmap(lambda n: matrices(st.just(n), st.just(n))))
@settings(max_examples=40)
def test_charpoly_is_det(A):
    f = charpoly(A, P)
    n = len(A)
    assert len(f) == n + 1 and f[-1] == 1
    for x in (0, 1, 7, 50):
        val = sum(c * pow(x, i, P) for i, c in enumerate(f)) % P
        assert val == brute_det((x * np.eye(n, dtype=np.int64) - A) % P, P)


@given(st.lists(st.integers(0, P - 1), min_size=1, max_size=7))
def test_roots_brute_force(f):
    expected = [x for x in range(P) if sum(c * pow(x, i, P) for i, c in enumerate(f)) % P == 0]
    if all(c % P == 0 for c in f):
        return
    assert roots(f, P) == expected
