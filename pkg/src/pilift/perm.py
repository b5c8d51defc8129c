"""Permutations on {0..n-1} and the text formats used to exchange them.

Products read left to right: ``(p * q)(x) == q(p(x))``, so groups act on
the right and ``x ** g == g.inverse() * x * g`` as in the usual exponent
notation for conjugation.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence


class MalformedPermutation(ValueError):
    pass


class Perm:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise MalformedPermutation(f"not a bijection on 0..{len(images) - 1}: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple) -> "Perm":
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls._trusted(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], n: int) -> "Perm":
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < n or a in seen:
                    raise MalformedPermutation(f"bad cycle {cyc} for degree {n}")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls._trusted(tuple(img))

    @classmethod
    def parse(cls, text: str, n: int) -> "Perm":
        """Parse 1-based disjoint cycle notation such as ``(1,2)(3,4)``."""
        text = text.strip().replace(" ", "")
        if text in ("", "()"):
            return cls.identity(n)
        if not re.fullmatch(r"(\(\d+(,\d+)*\))+", text):
            raise MalformedPermutation(f"cannot parse cycle notation {text!r}")
        cycles = [[int(a) - 1 for a in c.split(",")] for c in re.findall(r"\(([^)]*)\)", text)]
        try:
            return cls.from_cycles(cycles, n)
        except MalformedPermutation:
            raise MalformedPermutation(f"{text} is not a permutation of 1..{n}") from None

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        o = other.images
        return Perm._trusted(tuple(o[i] for i in self.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm._trusted(tuple(inv))

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(len(self.images))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __xor__(self, g: "Perm") -> "Perm":
        """Conjugate ``self ^ g == g**-1 * self * g``."""
        return g.inverse() * self * g

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[list[int]]:
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i] or self.images[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(cyc)
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def support(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def to_cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(a + 1) for a in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm({self.to_cycle_string()})"


def parse_group_file(text: str) -> tuple[int, list[Perm]]:
    """Read the ``degree n`` + one-generator-per-line group format."""
    degree = None
    gens = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", line)
            if not m:
                raise MalformedPermutation(f"expected 'degree n', got {line!r}")
            degree = int(m.group(1))
            continue
        gens.append(Perm.parse(line, degree))
    if degree is None:
        raise MalformedPermutation("missing 'degree n' line")
    return degree, gens


def format_group_file(degree: int, gens: Sequence[Perm], comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"degree {degree}")
    lines.extend(g.to_cycle_string() for g in gens)
    return "\n".join(lines) + "\n"
