import itertools

import pytest

from pilift.corpus import CORPUS
from pilift.perm import Perm
from pilift.primes import PrimeSet


@pytest.fixture(scope="session")
def corpus():
    return {e.name: e.group() for e in CORPUS}


@pytest.fixture(scope="session")
def S3(corpus):
    return corpus["S3"]


def brute_closure(gens, degree):
    """All products of the generators, by breadth-first search."""
    ident = Perm.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a * g
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def brute_subgroups(G):
    """Every subgroup of a small group, as frozensets of elements (two-generator closure)."""
    elems = G.element_list()
    subs = set()
    for a, b in itertools.combinations_with_replacement(elems, 2):
        subs.add(frozenset(brute_closure([a, b], G.degree)))
    return subs


PI_LIST = ["2", "3", "2,3", "2,5", "3,5", "none", "all"]
PRIME_SETS = [PrimeSet.parse(p) for p in PI_LIST]
