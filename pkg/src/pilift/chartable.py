"""Exact character tables by the Dixon-Schneider method.

Central characters are the common eigenvectors of the class-multiplication
matrices.  They are found over GF(p) with p = 1 mod exp(G), where every
eigenvalue splits, and each character value is lifted back to Q(zeta_o) from
its eigenvalue multiplicities, which the power maps determine modulo p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .character import Character, cyclotomic_from_dense, hermitian_sums, rational_inner_products
from .config import GUARDS, GuardError
from .cyclotomic import Cyclotomic
from .modp import charpoly, choose_prime, nullspace, roots, root_of_unity, rref
from .permgroup import PermGroup


class TableError(ArithmeticError):
    pass


@dataclass
class CharacterTable:
    group: PermGroup
    irreducibles: list[Character]

    def __len__(self) -> int:
        return len(self.irreducibles)

    def __iter__(self) -> Iterator[Character]:
        return iter(self.irreducibles)

    def __getitem__(self, i: int) -> Character:
        return self.irreducibles[i]

    def index(self, chi: Character) -> int:
        return self._index[chi.values]

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {chi.values: i for i, chi in enumerate(self.irreducibles)}
            self.__dict__["_idx"] = idx
        return idx

    def degrees(self) -> list[int]:
        return [chi.degree for chi in self.irreducibles]

    def inner_products(self, phi: Character) -> list[Fraction]:
        """<phi, chi> for every irreducible chi, in table order."""
        G = self.group
        dense = self.__dict__.get("_dense")
        if dense is None:
            dense = np.stack([chi.dense for chi in self.irreducibles])
            self.__dict__["_dense"] = dense
        r = rational_inner_products(phi.dense[None], dense, np.array(G.classes.sizes))[0]
        return [x / G.order for x in r]

    def constituents(self, phi: Character) -> list[tuple[int, Character]]:
        """Irreducible constituents of phi with their multiplicities."""
        out = []
        for m, chi in zip(self.inner_products(phi), self.irreducibles):
            if m:
                if m.denominator != 1 or m < 0:
                    raise ValueError("not a character: non-integral multiplicity")
                out.append((int(m), chi))
        return out

    def is_irreducible(self, phi: Character) -> bool:
        return phi.values in self._index


def _sort_key(chi: Character):
    return (chi.degree, not chi.is_trivial(), tuple(str(v) for v in chi.values))


_TABLES: dict[str, CharacterTable] = {}


def build_table(G: PermGroup) -> CharacterTable:
    """Compute the table from scratch, bypassing the cache."""
    if G.order > GUARDS.order:
        raise GuardError(f"character_table: order {G.order} exceeds guard-order {GUARDS.order}")
    k = len(G.classes)
    if k > GUARDS.classes:
        raise GuardError(f"character_table: {k} classes exceed the class-count guard {GUARDS.classes}")
    if G.is_abelian():
        rows = _abelian_table(G)
    else:
        rows = _dixon_schneider(G)
        verify_orthogonality(G, rows)
    rows.sort(key=_sort_key)
    return CharacterTable(G, rows)


def character_table(G: PermGroup) -> CharacterTable:
    G = G.interned()
    tab = _TABLES.get(G.fingerprint)
    if tab is None:
        tab = _TABLES[G.fingerprint] = build_table(G)
    return tab


def irr(G: PermGroup) -> list[Character]:
    return character_table(G).irreducibles


def verify_orthogonality(G: PermGroup, rows: list[Character]) -> None:
    """Exact row and column orthogonality and sum of squared degrees."""
    k = len(G.classes)
    if len(rows) != k:
        raise TableError(f"{len(rows)} characters for {k} classes")
    if sum(chi.degree ** 2 for chi in rows) != G.order:
        raise TableError("sum of squared degrees differs from |G|")
    e = G.exponent
    D = np.stack([chi.dense for chi in rows])
    h = np.array(G.classes.sizes)
    R = hermitian_sums(D, D, h)
    for a in range(k):
        for b in range(k):
            v = cyclotomic_from_dense(R[a, b], e)
            if v != (G.order if a == b else 0):
                raise TableError(f"row orthogonality fails for rows {a}, {b}")
    # columns: transpose to (class, character, coeff)
    Dc = np.transpose(D, (1, 0, 2))
    C = hermitian_sums(Dc, Dc, np.ones(k, dtype=np.int64))
    for i in range(k):
        for j in range(k):
            v = cyclotomic_from_dense(C[i, j], e)
            want = G.order // h[i] if i == j else 0
            if v != want:
                raise TableError(f"column orthogonality fails for classes {i}, {j}")


def _abelian_table(G: PermGroup) -> list[Character]:
    """Linear characters built generator by generator as exponent maps to Z/e."""
    e = G.exponent
    X = G.elements
    members = np.array([0])  # element indices of the current subgroup
    chars = [np.zeros(1, dtype=np.int64)]  # f(a) per member, values zeta_e^f
    for g in G.gens:
        gi = np.array(g.images)
        pos = {int(a): i for i, a in enumerate(members)}
        if G.index_of(g) in pos:
            continue
        # smallest m with g^m in the current subgroup
        m, gm = 1, g
        while G.index_of(gm) not in pos:
            m += 1
            gm = gm * g
        at_gm = pos[G.index_of(gm)]
        layers = [members]
        rows = X[members]
        for _ in range(1, m):
            rows = gi[rows]
            layers.append(G.locate(rows))
        new_members = np.concatenate(layers)
        new_chars = []
        for f in chars:
            base = int(f[at_gm])
            r0 = (base // m) if base % m == 0 else None
            if r0 is None:
                raise TableError("inconsistent abelian extension")
            for t in range(m):
                r = (r0 + t * (e // m)) % e
                new_chars.append(np.concatenate([(f + i * r) % e for i in range(m)]))
        members, chars = new_members, new_chars
    if len(members) != G.order or len(chars) != G.order:
        raise TableError("abelian table construction did not cover the group")
    # certify: each exponent map is a homomorphism on generators, maps distinct
    pos = np.empty(G.order, dtype=np.int64)
    pos[members] = np.arange(G.order)
    F = np.stack(chars)  # F[c, position of element]
    for g in G.gens:
        moved = pos[G.locate(np.array(g.images)[X[members]])]
        fg = F[:, pos[G.index_of(g)]]
        if ((F[:, moved] - F - fg[:, None]) % e).any():
            raise TableError("abelian character is not a homomorphism")
    if len({f.tobytes() for f in F}) != G.order:
        raise TableError("abelian characters are not distinct")
    zs = [Cyclotomic.zeta(e, f) for f in range(e)]
    cls = G.classes.element_class[members]
    out = []
    for f in chars:
        vals = [None] * G.order
        for c, fv in zip(cls, f):
            vals[c] = zs[fv]
        out.append(Character(G, vals))
    return out


_SC: dict[str, np.ndarray] = {}


def structure_constants(G: PermGroup) -> np.ndarray:
    """C[j, r, l] = #{x in class j : x^-1 z_l in class r} for the representative z_l."""
    key = G.fingerprint
    if key not in _SC:
        _SC[key] = _structure_constants(G)
    return _SC[key]


def class_product_support(G: PermGroup) -> np.ndarray:
    """P[j, r, l] is true when class l meets the product of classes j and r."""
    key = G.fingerprint
    if key not in _SUPPORT:
        _SUPPORT[key] = structure_constants(G) > 0
    return _SUPPORT[key]


_SUPPORT: dict[str, np.ndarray] = {}


def _structure_constants(G: PermGroup) -> np.ndarray:
    cd = G.classes
    k = len(cd)
    X = G.elements
    n = G.degree
    Xinv = np.empty_like(X)
    Xinv[np.arange(len(X))[:, None], X] = np.arange(n, dtype=X.dtype)
    cls_x = cd.element_class
    C = np.zeros((k, k, k), dtype=np.int64)
    for l, z in enumerate(cd.reps):
        zi = np.array(z.images, dtype=X.dtype)
        cls_y = G.classes_of(zi[Xinv])
        np.add.at(C[:, :, l], (cls_x, cls_y), 1)
    return C


def _column_basis(B: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    R, piv = rref(B.T, p)
    return R.T.copy(), piv


def _dixon_schneider(G: PermGroup) -> list[Character]:
    cd = G.classes
    k = len(cd)
    N = G.order
    h = cd.sizes
    e = G.exponent
    p = choose_prime(e, max(N, 2 * math.isqrt(N) * max(h)))
    C = structure_constants(G) % p
    spaces = [np.eye(k, dtype=np.int64)]
    for j in range(1, k):
        if all(B.shape[1] == 1 for B in spaces):
            break
        A = C[j]
        new = []
        for B in spaces:
            d = B.shape[1]
            if d == 1:
                new.append(B)
                continue
            B, piv = _column_basis(B, p)
            R = (A @ B % p)[piv, :]
            lambdas = roots(charpoly(R, p), p)
            total = 0
            for lam in lambdas:
                M = (R - lam * np.eye(d, dtype=np.int64)) % p
                K = nullspace(M, p)
                total += K.shape[1]
                new.append(_column_basis(B @ K % p, p)[0])
            if total != d:
                raise TableError("class matrix not diagonalizable over GF(p)")
        spaces = new
    if len(spaces) != k:
        raise TableError("common eigenspaces did not split into lines")
    inv = G.inverse_classes
    hinv = [pow(x, -1, p) for x in h]
    chars = []
    powers = {}
    for B in spaces:
        v = B[:, 0] % p
        v = v * pow(int(v[0]), -1, p) % p
        s = sum(int(v[j]) * int(v[inv[j]]) * hinv[j] for j in range(k)) % p
        d2 = N * pow(s, -1, p) % p
        d = math.isqrt(d2)
        if d * d != d2:
            raise TableError("degree recovery failed")
        res = [int(v[j]) * d * hinv[j] % p for j in range(k)]
        vals = []
        for j in range(k):
            o = cd.orders[j]
            if (j, o) not in powers:
                powers[j, o] = [G.power_map(l)[j] for l in range(o)]
            z = root_of_unity(p, o)
            oinv = pow(o, -1, p)
            coeffs = {}
            for t in range(o):
                m = sum(res[c] * pow(z, (-t * l) % o, p) for l, c in enumerate(powers[j, o])) * oinv % p
                if m > d:
                    raise TableError("eigenvalue multiplicity lift out of range")
                if m:
                    coeffs[t] = m
            vals.append(Cyclotomic(o, coeffs))
        chars.append(Character(G, vals))
    return chars


# --- table interchange format ----------------------------------------------


@dataclass
class TableFile:
    name: str
    order: int
    classes: list[tuple[str, int, int]]    # (representative in cycle notation, size, element order)
    rows: list[list[Cyclotomic]]


def format_table(tab: CharacterTable, name: str | None = None) -> str:
    G = tab.group
    cd = G.classes
    name = (name or G.name or "G").replace(" ", "_")
    lines = [f"group {name} order {G.order} classes {len(cd)}"]
    for rep, size, o in zip(cd.reps, cd.sizes, cd.orders):
        lines.append(f"{rep.to_cycle_string()} {size} {o}")
    for chi in tab:
        lines.append(", ".join(str(v) for v in chi.values))
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> TableFile:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if len(head) != 6 or head[0] != "group" or head[2] != "order" or head[4] != "classes":
        raise ValueError(f"bad table header: {lines[0]!r}")
    name, order, k = head[1], int(head[3]), int(head[5])
    if len(lines) != 1 + 2 * k:
        raise ValueError(f"expected {2 * k} lines after the header, found {len(lines) - 1}")
    classes = []
    for ln in lines[1:1 + k]:
        rep, size, o = ln.rsplit(None, 2)
        classes.append((rep, int(size), int(o)))
    rows = []
    for ln in lines[1 + k:]:
        vals = [Cyclotomic.parse(v) for v in ln.split(",")]
        if len(vals) != k:
            raise ValueError("character row has the wrong length")
        rows.append(vals)
    return TableFile(name, order, classes, rows)


def format_table_file(tf: TableFile) -> str:
    lines = [f"group {tf.name} order {tf.order} classes {len(tf.classes)}"]
    lines += [f"{r} {s} {o}" for r, s, o in tf.classes]
    lines += [", ".join(str(v) for v in row) for row in tf.rows]
    return "\n".join(lines) + "\n"


def check_table_file(tf: TableFile) -> list[str]:
    """Orthogonality checks using only the data in the file; returns the problems found."""
    problems = []
    sizes = [s for _, s, _ in tf.classes]
    k = len(sizes)
    if sum(sizes) != tf.order:
        problems.append("class sizes do not sum to the order")
    if sum(int(r[0]) ** 2 for r in tf.rows) != tf.order:
        problems.append("sum of squared degrees differs from the order")
    conj = [[v.conjugate() for v in r] for r in tf.rows]
    for a in range(k):
        for b in range(a, k):
            s = sum((tf.rows[a][i] * conj[b][i] * sizes[i] for i in range(k)), Cyclotomic.rational(0))
            if s != (tf.order if a == b else 0):
                problems.append(f"rows {a} and {b} are not orthogonal")
    for i in range(k):
        for j in range(i, k):
            s = sum((tf.rows[a][i] * conj[a][j] for a in range(k)), Cyclotomic.rational(0))
            if s != (tf.order // sizes[i] if i == j else 0):
                problems.append(f"columns {i} and {j} are not orthogonal")
    return problems
