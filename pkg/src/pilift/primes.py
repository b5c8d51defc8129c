"""Prime sets and pi-number arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of a positive integer as ((p, e), ...) sorted by p."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factorize(n))


def totient(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


def mobius(n: int) -> int:
    f = factorize(n)
    return 0 if any(e > 1 for _, e in f) else (-1) ** len(f)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


@dataclass(frozen=True)
class PrimeSet:
    """A set of primes pi, possibly cofinite.

    ``PrimeSet({2, 3})`` is {2, 3}; ``PrimeSet.all()`` contains every prime.
    The complement is always available through :meth:`complement`, so pi and
    pi' are treated symmetrically.
    """

    primes: frozenset = frozenset()
    cofinite: bool = False

    def __post_init__(self):
        object.__setattr__(self, "primes", frozenset(int(p) for p in self.primes))
        bad = [p for p in self.primes if not is_prime(p)]
        if bad:
            raise ValueError(f"not prime: {sorted(bad)}")

    @classmethod
    def of(cls, primes: Iterable[int] = ()) -> "PrimeSet":
        return cls(frozenset(primes))

    @classmethod
    def all(cls) -> "PrimeSet":
        return cls(frozenset(), True)

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        """Parse ``"2,3"``, ``"all"``, ``"none"`` or ``""``; ``"^2"`` means 2'."""
        text = text.strip().replace(" ", "")
        if text in ("", "none", "{}", "empty"):
            return cls()
        if text in ("all", "*"):
            return cls.all()
        if text.startswith("^"):
            return cls.parse(text[1:]).complement()
        return cls.of(int(t) for t in text.strip("{}").split(",") if t)

    def __contains__(self, p: int) -> bool:
        return (p in self.primes) != self.cofinite

    def complement(self) -> "PrimeSet":
        return PrimeSet(self.primes, not self.cofinite)

    def is_pi_number(self, n: int) -> bool:
        return all(p in self for p in prime_divisors(abs(n)))

    def part(self, n: int) -> int:
        """The pi-part of n."""
        out = 1
        for p, e in factorize(abs(n)):
            if p in self:
                out *= p ** e
        return out

    def label(self) -> str:
        body = ",".join(str(p) for p in sorted(self.primes))
        if self.cofinite:
            return "all" if not body else f"^{body}"
        return body or "none"

    def __str__(self) -> str:
        return self.label()
