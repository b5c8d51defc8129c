"""Exact arithmetic in cyclotomic fields.

A :class:`Cyclotomic` is stored as rational coefficients on the Zumbroich
basis of Q(zeta_n), where n is the smallest conductor containing the value.
Both choices make equality a comparison of stored data.

Basis exponents are read through CRT coordinates: for p^v || n the local
coordinate of exponent i is ``x_p = i * (n / p^v)^-1 mod p^v`` and its top
digit is ``x_p // p^(v-1)``.  Odd primes keep top digits 1..p-1, the prime 2
keeps top digit 0.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .primes import PrimeSet, factorize

Number = Union[int, Fraction]


class InvalidAutomorphism(ValueError):
    pass


@lru_cache(maxsize=None)
def _local(n: int) -> tuple[tuple[int, int, int, int], ...]:
    out = []
    for p, v in factorize(n) if n > 1 else ():
        pe = p ** v
        out.append((p, v, pe, pow(n // pe, -1, pe)))
    return tuple(out)


def _clean(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _reduce(n: int, coeffs: dict[int, Number]) -> dict[int, Number]:
    """Rewrite sum c_i zeta_n^i on the Zumbroich basis (n not 2 mod 4)."""
    d = {i % n: c for i, c in coeffs.items() if c}
    for p, v, pe, inv in _local(n):
        shift = n // p
        top = pe // p
        new: dict[int, Number] = {}
        for i, c in d.items():
            b = (i * inv) % pe // top
            if (p == 2 and b == 0) or (p != 2 and b != 0):
                new[i] = new.get(i, 0) + c
            elif p == 2:
                j = (i + shift) % n
                new[j] = new.get(j, 0) - c
            else:
                for t in range(1, p):
                    j = (i + t * shift) % n
                    new[j] = new.get(j, 0) - c
        d = {i: _clean(c) for i, c in new.items() if c}
    return d


def _minimize(n: int, d: dict[int, Number]) -> tuple[int, dict[int, Number]]:
    """Shrink the conductor while the value lies in a smaller cyclotomic field."""
    changed = True
    while changed and n > 1:
        changed = False
        for p, v, pe, inv in _local(n):
            if (p != 2 and v >= 2) or (p == 2 and v >= 3):
                if all(i % p == 0 for i in d):
                    n, d = n // p, {i // p: c for i, c in d.items()}
                    changed = True
                    break
            elif p == 2:
                if all(i % 4 == 0 for i in d):
                    n, d = n // 4, {i // 4: c for i, c in d.items()}
                    changed = True
                    break
            else:
                m = n // p
                groups: dict[int, list] = {}
                for i, c in d.items():
                    groups.setdefault(i % m, []).append(c)
                if all(len(cs) == p - 1 and all(c == cs[0] for c in cs) for cs in groups.values()):
                    pinv = pow(p, -1, m) if m > 1 else 0
                    n, d = m, {(r * pinv) % m if m > 1 else 0: -cs[0] for r, cs in groups.items()}
                    changed = True
                    break
    return n, d


def _canonical(n: int, coeffs: dict[int, Number]) -> tuple[int, dict[int, Number]]:
    if n % 4 == 2:
        # zeta_2m = -zeta_m^((m+1)/2) for odd m
        m = n // 2
        h = (m + 1) // 2
        merged: dict[int, Number] = {}
        for i, c in coeffs.items():
            j = (i * h) % m
            merged[j] = merged.get(j, 0) + (-c if i % 2 else c)
        n, coeffs = m, merged
    return _minimize(n, _reduce(n, coeffs))


class Cyclotomic:
    """An element of Q(zeta_n) in canonical form."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n: int = 1, coeffs: dict[int, Number] | None = None):
        if n < 1:
            raise ValueError("conductor must be positive")
        n, d = _canonical(n, dict(coeffs or {}))
        self.n = n
        self.coeffs = d
        self._hash = None

    @classmethod
    def _raw(cls, n: int, d: dict[int, Number]) -> "Cyclotomic":
        obj = object.__new__(cls)
        obj.n = n
        obj.coeffs = d
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q: Number) -> "Cyclotomic":
        q = _clean(Fraction(q)) if not isinstance(q, int) else q
        return cls._raw(1, {0: q} if q else {})

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        return cls(n, {k % n: 1})

    @classmethod
    def coerce(cls, x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    # --- arithmetic -----------------------------------------------------

    def _embed(self, L: int) -> dict[int, Number]:
        s = L // self.n
        return {i * s: c for i, c in self.coeffs.items()}

    def __add__(self, other) -> "Cyclotomic":
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        if self.n == other.n == 1:
            return Cyclotomic.rational(self.coeffs[0] + other.coeffs[0])
        L = math.lcm(self.n, other.n)
        d = self._embed(L)
        for i, c in other._embed(L).items():
            d[i] = d.get(i, 0) + c
        return Cyclotomic(L, d)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic._raw(self.n, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other) -> "Cyclotomic":
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Cyclotomic":
        return Cyclotomic.coerce(other) - self

    def __mul__(self, other) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Cyclotomic._raw(1, {})
            return Cyclotomic._raw(self.n, {i: _clean(c * other) for i, c in self.coeffs.items()})
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if other.n == 1:
            return self * other.coeffs.get(0, 0)
        if self.n == 1:
            return other * self.coeffs.get(0, 0)
        L = math.lcm(self.n, other.n)
        a, b = self._embed(L), other._embed(L)
        d: dict[int, Number] = {}
        for i, c in a.items():
            for j, e in b.items():
                k = (i + j) % L
                d[k] = d.get(k, 0) + c * e
        return Cyclotomic(L, d)

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta_n -> zeta_n^k."""
        if math.gcd(k, self.n) != 1:
            raise InvalidAutomorphism(f"gcd({k}, {self.n}) != 1")
        if self.n == 1:
            return self
        return Cyclotomic(self.n, {(i * k) % self.n: c for i, c in self.coeffs.items()})

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def inverse(self) -> "Cyclotomic":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        if self.n == 1:
            return Cyclotomic.rational(Fraction(1) / self.coeffs[0])
        other = Cyclotomic.rational(1)
        for k in range(2, self.n):
            if math.gcd(k, self.n) == 1:
                other = other * self.galois(k)
        norm = self * other
        assert norm.n == 1, "norm must be rational"
        return other * (Fraction(1) / norm.coeffs[0])

    def __truediv__(self, other) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        return self * Cyclotomic.coerce(other).inverse()

    def __rtruediv__(self, other) -> "Cyclotomic":
        return Cyclotomic.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # --- comparison and inspection ---------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            # rationals hash like the int or Fraction they equal
            if self.n == 1:
                self._hash = hash(self.coeffs.get(0, 0))
            else:
                self._hash = hash((self.n, frozenset(self.coeffs.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def conductor(self) -> int:
        return self.n

    def is_rational(self) -> bool:
        return self.n == 1

    def rational_value(self) -> Fraction:
        if self.n != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs.get(0, 0))

    def is_integer(self) -> bool:
        return self.n == 1 and isinstance(self.coeffs.get(0, 0), int)

    def __int__(self) -> int:
        q = self.rational_value()
        if q.denominator != 1:
            raise ValueError(f"{self} is not an integer")
        return q.numerator

    def __complex__(self) -> complex:
        return sum((complex(c) * cmath.exp(2j * math.pi * i / self.n)
                    for i, c in self.coeffs.items()), 0j)

    def to_dense(self, e: int) -> list[Number]:
        """Coefficients on zeta_e^0..zeta_e^(e-1) for a multiple e of the conductor."""
        if e % self.n:
            raise ValueError(f"conductor {self.n} does not divide {e}")
        out: list[Number] = [0] * e
        s = e // self.n
        for i, c in self.coeffs.items():
            out[i * s] = c
        return out

    # --- text -------------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in sorted(self.coeffs):
            c = self.coeffs[i]
            neg = c < 0
            a = -c if neg else c
            if i == 0:
                body = str(a)
            elif a == 1:
                body = f"z({self.n})^{i}"
            else:
                body = f"{a}*z({self.n})^{i}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"

    @classmethod
    def parse(cls, text: str) -> "Cyclotomic":
        """Inverse of ``str``: terms ``c``, ``c*z(n)^k`` or ``z(n)^k`` joined by + / -."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty cyclotomic literal")
        total = cls.rational(0)
        pos = 0
        term_re = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)(\*)?)?(?:z\((\d+)\)(?:\^(\d+))?)?")
        while pos < len(s):
            m = term_re.match(s, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(4) is None):
                raise ValueError(f"cannot parse cyclotomic literal {text!r} at {pos}")
            sign, coef, star, cond, exp = m.groups()
            if star and cond is None:
                raise ValueError(f"dangling '*' in {text!r}")
            c = Fraction(coef) if coef else Fraction(1)
            if sign == "-":
                c = -c
            if cond is None:
                term = cls.rational(c)
            else:
                term = cls.zeta(int(cond), int(exp) if exp else 1) * c
            total = total + term
            pos = m.end()
        return total


E = Cyclotomic.zeta


def galois_apply(a: Cyclotomic, k: int) -> Cyclotomic:
    return a.galois(k)


def lies_in_Q_pi(a: Cyclotomic, pi: PrimeSet) -> bool:
    """Whether a is fixed by every sigma_k with k = 1 mod (pi-part of the conductor)."""
    n = a.n
    npi = pi.part(n)
    for k in range(1, n + 1):
        if math.gcd(k, n) == 1 and k % npi == 1 % npi and a.galois(k) != a:
            return False
    return True
