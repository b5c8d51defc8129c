"""Permutation groups: stabilizer chains, element tables and conjugacy classes.

Every group is a subgroup of Sym(n) for its degree n.  Groups whose order is
under the order guard can be enumerated into a lexicographically sorted
numpy table; most structural computations (classes, normalizers, cosets)
work on that table with vectorized lookups.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .config import check_order
from .perm import Perm


class ContainmentError(ValueError):
    """A subgroup argument is not contained in the ambient group."""


class NotNormalError(ValueError):
    pass


def _mul(p: tuple, q: tuple) -> tuple:
    return tuple(q[i] for i in p)


def _inv(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _is_id(p: tuple) -> bool:
    return all(i == j for i, j in enumerate(p))


class StabChain:
    """Base and strong generating set built by the Schreier-Sims algorithm.

    New base points are always the smallest point moved by the element that
    forced the new level, so the chain is a deterministic function of the
    generator list.
    """

    def __init__(self, degree: int, gens: Iterable[tuple]):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.base: list[int] = []
        self.strong: list[list[tuple]] = []
        self.trans: list[dict[int, tuple]] = []
        for g in gens:
            self.extend(g)

    def _new_level(self, g: tuple) -> None:
        b = next(i for i, j in enumerate(g) if i != j)
        self.base.append(b)
        self.strong.append([])
        self.trans.append({b: self.identity})

    def _orbit(self, i: int) -> None:
        b = self.base[i]
        trans = {b: self.identity}
        queue = [b]
        for x in queue:
            u = trans[x]
            for s in self.strong[i]:
                y = s[x]
                if y not in trans:
                    trans[y] = _mul(u, s)
                    queue.append(y)
        self.trans[i] = trans

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        for i in range(start, len(self.base)):
            beta = g[self.base[i]]
            u = self.trans[i].get(beta)
            if u is None:
                return g, i
            g = _mul(g, _inv(u))
        return g, len(self.base)

    def contains(self, g: tuple) -> bool:
        h, j = self.sift(g)
        return j == len(self.base) and _is_id(h)

    def extend(self, g: tuple) -> bool:
        """Add ``g`` to the group; returns False if it was already a member."""
        h, j = self.sift(g)
        if j == len(self.base) and _is_id(h):
            return False
        self._add(h, j)
        self._complete(j)
        return True

    def _add(self, h: tuple, j: int) -> None:
        if j == len(self.base):
            self._new_level(h)
        for level in range(j + 1):
            self.strong[level].append(h)
            self._orbit(level)

    def _complete(self, i: int) -> None:
        while i >= 0:
            restart = None
            for beta, u in list(self.trans[i].items()):
                for s in self.strong[i]:
                    v = self.trans[i][s[beta]]
                    sg = _mul(_mul(u, s), _inv(v))
                    if _is_id(sg):
                        continue
                    h, j = self.sift(sg, i + 1)
                    if j < len(self.base) or not _is_id(h):
                        self._add(h, j)
                        restart = j
                        break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = restart

    @property
    def order(self) -> int:
        return math.prod(len(t) for t in self.trans)

    def transversal_sizes(self) -> list[int]:
        return [len(t) for t in self.trans]


@dataclass
class ClassData:
    """Conjugacy classes ordered by (element order, lexicographically least member)."""

    reps: list[Perm]
    rep_index: np.ndarray
    sizes: list[int]
    orders: list[int]
    element_class: np.ndarray
    _powers: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.reps)


_INTERN: dict[str, "PermGroup"] = {}


class PermGroup:
    """A permutation group given by generators, with lazily computed data."""

    def __init__(self, degree: int, gens: Sequence[Perm] = (), name: str | None = None):
        gens = list(gens)
        for g in gens:
            if not isinstance(g, Perm):
                g = Perm(g)
            if g.degree != degree:
                raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
        seen = set()
        clean = []
        for g in gens:
            g = g if isinstance(g, Perm) else Perm(g)
            if not g.is_identity() and g not in seen:
                seen.add(g)
                clean.append(g)
        self.degree = degree
        self.gens: tuple[Perm, ...] = tuple(clean)
        self.name = name

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} order={self.order}>"

    # --- chain-level data -------------------------------------------------

    @cached_property
    def chain(self) -> StabChain:
        return StabChain(self.degree, (g.images for g in self.gens))

    @cached_property
    def order(self) -> int:
        return self.chain.order

    def contains(self, g: Perm) -> bool:
        return g.degree == self.degree and self.chain.contains(g.images)

    __contains__ = contains

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def is_trivial(self) -> bool:
        return not self.gens

    # --- element table ----------------------------------------------------

    @cached_property
    def elements(self) -> np.ndarray:
        """All elements as rows of image arrays, sorted lexicographically."""
        check_order(self.order, "element enumeration")
        dtype = np.uint8 if self.degree <= 256 else np.int32
        rows = np.arange(self.degree, dtype=dtype)[None, :]
        for trans in reversed(self.chain.trans):
            us = np.array(list(trans.values()), dtype=dtype)
            # every element is (stabilizer element) * (transversal element)
            rows = np.concatenate([u[rows] for u in us])
        order = np.lexsort(rows.T[::-1])
        return np.ascontiguousarray(rows[order])

    @cached_property
    def _keys(self) -> tuple[np.ndarray | None, np.ndarray | None, dict | None]:
        base = self.chain.base
        if not base:
            return np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64), None
        if self.degree ** len(base) < 2 ** 62:
            keys = self._encode(self.elements)
            perm = np.argsort(keys, kind="stable")
            return keys[perm], perm, None
        return None, None, {row.tobytes(): i for i, row in enumerate(self.elements)}

    def _encode(self, rows: np.ndarray) -> np.ndarray:
        base = self.chain.base
        weights = self.degree ** np.arange(len(base), dtype=np.int64)
        return rows[:, base].astype(np.int64) @ weights

    def locate(self, rows: np.ndarray) -> np.ndarray:
        """Index into :attr:`elements` of each row, or -1 for non-members."""
        rows = np.asarray(rows).reshape(-1, self.degree)
        elems = self.elements
        sorted_keys, perm, table = self._keys
        if table is not None:
            rows = rows.astype(elems.dtype)
            return np.array([table.get(r.tobytes(), -1) for r in rows], dtype=np.int64)
        if not self.chain.base:
            ident = np.arange(self.degree)
            return np.where((rows == ident).all(axis=1), 0, -1)
        keys = self._encode(rows)
        pos = np.searchsorted(sorted_keys, keys)
        pos = np.minimum(pos, len(sorted_keys) - 1)
        idx = perm[pos]
        ok = (sorted_keys[pos] == keys) & (elems[idx] == rows).all(axis=1)
        return np.where(ok, idx, -1)

    def index_of(self, g: Perm) -> int:
        return int(self.locate(np.array(g.images))[0])

    def element(self, i: int) -> Perm:
        return Perm._trusted(tuple(int(x) for x in self.elements[i]))

    def element_list(self) -> list[Perm]:
        return [Perm._trusted(tuple(int(x) for x in row)) for row in self.elements]

    @cached_property
    def fingerprint(self) -> str:
        h = hashlib.sha1(f"{self.degree}:{self.order}:".encode())
        h.update(self.elements.astype(np.int32).tobytes())
        return h.hexdigest()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        if self is other:
            return True
        return (self.degree == other.degree and self.order == other.order
                and all(g in other for g in self.gens))

    def __hash__(self) -> int:
        return hash(self.fingerprint)

    def interned(self) -> "PermGroup":
        """The canonical instance for this element set (carries shared caches)."""
        key = self.fingerprint
        found = _INTERN.get(key)
        if found is None:
            _INTERN[key] = found = self
        elif found.name is None and self.name is not None:
            found.name = self.name
        return found

    def mask_of(self, H: "PermGroup") -> np.ndarray:
        """Boolean mask over :attr:`elements` marking the members of ``H``."""
        idx = self.locate(H.elements)
        if (idx < 0).any():
            raise ContainmentError("subgroup is not contained in the group")
        mask = np.zeros(self.order, dtype=bool)
        mask[idx] = True
        return mask

    def subgroup_from_mask(self, mask: np.ndarray, name: str | None = None) -> "PermGroup":
        """The subgroup whose elements are marked (the mask must be closed)."""
        gens: list[Perm] = []
        covered = np.zeros(self.order, dtype=bool)
        covered[0] = True
        while True:
            todo = np.flatnonzero(mask & ~covered)
            if len(todo) == 0:
                break
            gens.append(self.element(int(todo[0])))
            H = PermGroup(self.degree, gens)
            covered = self.mask_of(H)
        H = PermGroup(self.degree, gens, name)
        if H.order != int(mask.sum()):
            raise ValueError("mask is not a subgroup")
        return H.interned()

    def subgroup(self, gens: Sequence[Perm], name: str | None = None) -> "PermGroup":
        for g in gens:
            if g not in self:
                raise ContainmentError(f"{g} is not in the group")
        return PermGroup(self.degree, gens, name)

    # --- conjugacy classes ------------------------------------------------

    @cached_property
    def classes(self) -> ClassData:
        X = self.elements
        N = len(X)
        src, dst = [np.arange(N)], [np.arange(N)]
        for g in self.gens:
            s = np.array(g.images)
            sinv = np.array(g.inverse().images)
            conj = s[X[:, sinv]]
            src.append(np.arange(N))
            dst.append(self.locate(conj))
        src = np.concatenate(src)
        dst = np.concatenate(dst)
        graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N))
        _, labels = connected_components(graph, directed=True, connection="weak")
        _, first, counts = np.unique(labels, return_index=True, return_counts=True)
        reps = [self.element(int(i)) for i in first]
        orders = [r.order() for r in reps]
        order = sorted(range(len(first)), key=lambda c: (orders[c], int(first[c])))
        relabel = np.empty(len(first), dtype=np.int64)
        lab_of_first = labels[first]
        for new, old in enumerate(order):
            relabel[lab_of_first[old]] = new
        return ClassData(
            reps=[reps[c] for c in order],
            rep_index=np.array([first[c] for c in order]),
            sizes=[int(counts[c]) for c in order],
            orders=[orders[c] for c in order],
            element_class=relabel[labels],
        )

    def class_of(self, g: Perm) -> int:
        i = self.index_of(g)
        if i < 0:
            raise ContainmentError(f"{g} is not in the group")
        return int(self.classes.element_class[i])

    def classes_of(self, rows: np.ndarray) -> np.ndarray:
        idx = self.locate(rows)
        if (idx < 0).any():
            raise ContainmentError("element is not in the group")
        return self.classes.element_class[idx]

    def power_map(self, k: int) -> list[int]:
        """Class of g**k for a representative g of each class."""
        cd = self.classes
        if k not in cd._powers:
            cd._powers[k] = [self.class_of(r ** k) for r in cd.reps]
        return cd._powers[k]

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.classes.orders)

    @cached_property
    def inverse_classes(self) -> list[int]:
        return self.power_map(-1)

    def is_abelian(self) -> bool:
        return all((a * b) == (b * a) for a in self.gens for b in self.gens)

    # --- element actions --------------------------------------------------

    def conjugates_of_all(self, g: Perm) -> np.ndarray:
        """Rows ``x**-1 * g * x`` for every element ``x`` (same order as elements)."""
        X = self.elements
        n = self.degree
        Xinv = np.empty_like(X)
        Xinv[np.arange(len(X))[:, None], X] = np.arange(n, dtype=X.dtype)
        gi = np.array(g.images, dtype=X.dtype)
        # (x^-1 g x)(i) = x(g(x^-1(i)))
        return np.take_along_axis(X, gi[Xinv], axis=1)

    def right_cosets(self, H: "PermGroup") -> tuple[np.ndarray, list[int]]:
        """Label each element by its right coset ``H g``; reps are lex-least."""
        X = self.elements
        N = len(X)
        src, dst = [np.arange(N)], [np.arange(N)]
        for h in H.gens:
            hi = np.array(h.images)
            src.append(np.arange(N))
            dst.append(self.locate(X[:, hi]))
        graph = coo_matrix((np.ones(sum(len(s) for s in src), dtype=np.int8),
                            (np.concatenate(src), np.concatenate(dst))), shape=(N, N))
        _, labels = connected_components(graph, directed=True, connection="weak")
        _, first = np.unique(labels, return_index=True)
        order = np.argsort(first)
        relabel = np.empty(len(first), dtype=np.int64)
        relabel[labels[first[order]]] = np.arange(len(first))
        return relabel[labels], [int(first[i]) for i in order]

    def coset_action(self, H: "PermGroup", g: Perm,
                     cosets: tuple[np.ndarray, list[int]] | None = None) -> Perm:
        """Permutation induced by ``g`` on the right cosets of ``H``."""
        labels, reps = cosets if cosets is not None else self.right_cosets(H)
        X = self.elements
        gi = np.array(g.images)
        moved = gi[X[reps]]
        return Perm(labels[self.locate(moved)])


def orbit_stabilizer(G: PermGroup, point: Hashable,
                     act: Callable[[Hashable, Perm], Hashable]) -> tuple[list, PermGroup]:
    """Orbit of ``point`` under ``G`` and its stabilizer via Schreier generators."""
    trans = {point: G.identity}
    orbit = [point]
    stab_gens: list[Perm] = []
    stab = PermGroup(G.degree)
    for x in orbit:
        u = trans[x]
        for s in G.gens:
            y = act(x, s)
            if y not in trans:
                trans[y] = u * s
                orbit.append(y)
            else:
                sg = u * s * trans[y].inverse()
                if not sg.is_identity() and sg not in stab:
                    stab_gens.append(sg)
                    stab = PermGroup(G.degree, stab_gens)
    return orbit, stab
