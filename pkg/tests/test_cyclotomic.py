import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pilift.cyclotomic import Cyclotomic, lies_in_Q_pi
from pilift.primes import PrimeSet

conductors = st.sampled_from([1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20, 24])


@st.composite
def cyclotomics(draw):
    n = draw(conductors)
    coeffs = draw(st.dictionaries(st.integers(0, n - 1), st.fractions(-5, 5, max_denominator=4), max_size=4))
    return Cyclotomic(n, coeffs)


def approx(a, b):
    return abs(complex(a) - complex(b)) < 1e-9


def test_two_mod_four_regression():
    # 1 + zeta_2 = 0; colliding terms must add, not overwrite
    assert Cyclotomic(2, {0: 1, 1: 1}) == 0
    assert Cyclotomic(6, {0: 1, 3: 1}) == 0
    assert Cyclotomic(10, {1: 1, 6: 1}) == 0


def test_zeta_identities():
    z3 = Cyclotomic.zeta(3)
    assert 1 + z3 + z3 ** 2 == 0
    assert Cyclotomic.zeta(4) ** 2 == -1
    assert Cyclotomic.zeta(6) == -Cyclotomic.zeta(3, 2)
    assert Cyclotomic.zeta(12, 3) == Cyclotomic.zeta(4)


def test_minimal_conductor():
    s = Cyclotomic.zeta(8) + Cyclotomic.zeta(8, 7)
    assert (s * s) == 2 and s.conductor == 8
    assert (Cyclotomic.zeta(12, 4)).conductor == 3


@given(cyclotomics(), cyclotomics())
@settings(max_examples=200)
def test_field_operations_match_complex(a, b):
    assert approx(a + b, complex(a) + complex(b))
    assert approx(a * b, complex(a) * complex(b))
    assert approx(a.conjugate(), complex(a).conjugate())
    if b:
        assert approx(a / b, complex(a) / complex(b))


@given(cyclotomics())
def test_str_parse_round_trip(a):
    assert Cyclotomic.parse(str(a)) == a


@given(cyclotomics(), st.integers(1, 200))
def test_galois_is_a_ring_map(a, k):
    # 840 is a multiple of every conductor drawn
    if math.gcd(k, 840) != 1:
        return
    b = Cyclotomic.zeta(5) + 2
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)
    assert (a + b).galois(k) == a.galois(k) + b.galois(k)


def test_rational_value():
    assert Cyclotomic(3, {0: Fraction(1, 2)}).rational_value() == Fraction(1, 2)
    assert (Cyclotomic.zeta(3) + Cyclotomic.zeta(3, 2)).rational_value() == -1
    with pytest.raises(ValueError):
        Cyclotomic.zeta(3).rational_value()


@pytest.mark.parametrize("value,pi,expected", [
    (Cyclotomic.zeta(3), "3", True),
    (Cyclotomic.zeta(3), "2", False),
    (Cyclotomic.zeta(4), "3", False),
    (Cyclotomic.zeta(12), "2,3", True),
    (Cyclotomic.zeta(12), "3", False),
    (Cyclotomic.rational(5), "none", True),
    (Cyclotomic.zeta(7) + Cyclotomic.zeta(7, 6), "3", False),
])
def test_lies_in_Q_pi(value, pi, expected):
    assert lies_in_Q_pi(value, PrimeSet.parse(pi)) is expected


def test_complex_value():
    assert cmath.isclose(complex(Cyclotomic.zeta(8)), cmath.exp(2j * cmath.pi / 8))


@given(st.fractions(-10, 10, max_denominator=6))
def test_rationals_hash_like_numbers(q):
    c = Cyclotomic.rational(q)
    assert c == q and hash(c) == hash(q)
    assert len({c, q}) == 1
