"""The shipped corpus: group files and the prime sets each one is run with."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from importlib import resources

from .perm import parse_group_file
from .permgroup import PermGroup
from .primes import PrimeSet

PI_SETS = ("2", "3", "2,3", "2,5", "3,5", "none", "all")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    file: str
    pis: tuple[str, ...] = PI_SETS
    # optional golden values: (pi, |B_pi|) pairs
    expected: tuple[tuple[str, int], ...] = ()

    def text(self) -> str:
        return resources.files("pilift.data").joinpath(self.file).read_text()

    def sha256(self) -> str:
        return hashlib.sha256(self.text().encode()).hexdigest()

    def group(self) -> PermGroup:
        degree, gens = parse_group_file(self.text())
        return PermGroup(degree, gens, self.name).interned()

    def prime_sets(self) -> list[PrimeSet]:
        return [PrimeSet.parse(p) for p in self.pis]


CORPUS = (
    CorpusEntry("C6", "c6.grp"),
    CorpusEntry("S3", "s3.grp", expected=(("3", 2),)),
    CorpusEntry("S4", "s4.grp"),
    CorpusEntry("A4", "a4.grp"),
    CorpusEntry("D8", "d8.grp"),
    CorpusEntry("Q8", "q8.grp"),
    CorpusEntry("SL(2,3)", "sl23.grp"),
    CorpusEntry("C7:C3", "c7c3.grp", PI_SETS + ("7",)),
    CorpusEntry("C5:C4", "c5c4.grp"),
    CorpusEntry("A4xC3", "a4xc3.grp"),
    CorpusEntry("U1", "u1.grp"),
)


def entry(name: str) -> CorpusEntry:
    for e in CORPUS:
        if e.name == name:
            return e
    raise KeyError(name)


def corpus_hashes() -> dict[str, str]:
    return {e.file: e.sha256() for e in CORPUS}
