"""Class functions with exact cyclotomic values, and the character calculus."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .cyclotomic import Cyclotomic
from .primes import mobius, totient
from .modp import choose_prime, root_of_unity
from .perm import Perm
from .permgroup import ContainmentError, PermGroup
from . import structure as st


class DomainError(ValueError):
    """Characters living on different groups were combined."""


_ZERO = Cyclotomic.rational(0)
_ONE = Cyclotomic.rational(1)


@lru_cache(maxsize=None)
def _shift_index(e: int) -> np.ndarray:
    t = np.arange(e)[:, None]
    s = np.arange(e)[None, :]
    return (s - t) % e


def dense_values(values: Sequence[Cyclotomic], e: int) -> np.ndarray:
    rows = [v.to_dense(e) for v in values]
    if all(isinstance(c, int) for r in rows for c in r):
        return np.array(rows, dtype=np.int64).reshape(len(values), e)
    return np.array(rows, dtype=object).reshape(len(values), e)


def hermitian_sums(A: np.ndarray, B: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """r[a, b, t] with sum_t r zeta^t = sum_i w_i A[a,i] * conj(B[b,i]).

    A and B are dense (rows x classes x e) coefficient arrays.
    """
    e = A.shape[2]
    Bs = B[:, :, _shift_index(e)]  # [b, i, t, s] = B[b, i, s - t]
    if A.dtype == object or B.dtype == object:
        return np.einsum("ais,i,bits->abt", A, weights.astype(object), Bs)
    Aw = (A * weights[None, :, None]).astype(np.float64)
    bound = np.abs(Aw).sum() * max(1, np.abs(B).max(initial=0))
    if bound < 2 ** 52:
        out = np.einsum("ais,bits->abt", Aw, Bs.astype(np.float64), optimize=True)
        return np.rint(out).astype(np.int64)
    return np.einsum("ais,i,bits->abt", A.astype(object), weights.astype(object), Bs.astype(object))


@lru_cache(maxsize=None)
def trace_matrix(e: int) -> np.ndarray:
    """T[s, t] = trace of zeta_e^(s - t) from Q(zeta_e) down to Q (a Ramanujan sum)."""
    ph = totient(e)
    c = []
    for t in range(e):
        g = math.gcd(t, e)
        c.append(mobius(e // g) * ph // totient(e // g))
    c = np.array(c, dtype=np.int64)
    return c[(np.arange(e)[:, None] - np.arange(e)[None, :]) % e]


def rational_inner_products(A: np.ndarray, B: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Exact sum_i w_i A[a,i] conj(B[b,i]) for sums known to be rational.

    A rational value equals its trace divided by [Q(zeta_e):Q], and the trace
    of a product is a bilinear form on dense coefficient vectors.  Returns an
    object array of Fractions.
    """
    e = A.shape[2]
    T = trace_matrix(e)
    exact = A.dtype == object or B.dtype == object
    if not exact:
        bound = (np.abs(A).max(initial=0) * np.abs(B).max(initial=0) * int(weights.max(initial=1))
                 * A.shape[1] * e * e * totient(e))
        exact = bound >= 2 ** 62
    if exact:
        A, B, T, w = A.astype(object), B.astype(object), T.astype(object), weights.astype(object)
    else:
        w = weights.astype(np.int64)
    BT = np.einsum("bit,st->bis", B, T)
    Aw = A * w[None, :, None]
    raw = Aw.reshape(A.shape[0], -1) @ BT.reshape(B.shape[0], -1).T
    d = totient(e)
    return np.vectorize(lambda x: Fraction(int(x), d) if not isinstance(x, Fraction) else x / d,
                        otypes=[object])(raw)


def cyclotomic_from_dense(vec: Sequence, e: int) -> Cyclotomic:
    return Cyclotomic(e, {t: int(c) if isinstance(c, (np.integer,)) else c
                          for t, c in enumerate(vec) if c})


class Character:
    """A class function on ``group`` given by its values on the class list."""

    __slots__ = ("group", "values", "_dense", "_hash", "_det", "_res", "_dord")

    def __init__(self, group: PermGroup, values: Iterable):
        self.group = group
        self.values = tuple(Cyclotomic.coerce(v) for v in values)
        if len(self.values) != len(group.classes):
            raise ValueError("one value per conjugacy class expected")
        self._dense = None
        self._hash = None
        self._det = None
        self._res = None
        self._dord = None

    @classmethod
    def trivial(cls, G: PermGroup) -> "Character":
        return cls(G, [_ONE] * len(G.classes))

    # --- basic data --------------------------------------------------------

    @property
    def degree(self) -> int:
        return int(self.values[0])

    def is_linear(self) -> bool:
        return self.values[0] == 1

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def __call__(self, g: Perm) -> Cyclotomic:
        return self.values[self.group.class_of(g)]

    def __repr__(self) -> str:
        return "Character[" + ", ".join(str(v) for v in self.values) + "]"

    def key(self) -> tuple:
        return (self.group.fingerprint, self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return self.values == other.values and (
            self.group is other.group or self.group.fingerprint == other.group.fingerprint)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def _same(self, other: "Character") -> None:
        if self.group is not other.group and self.group.fingerprint != other.group.fingerprint:
            raise DomainError("characters of different groups")

    # --- arithmetic --------------------------------------------------------

    def __add__(self, other: "Character") -> "Character":
        self._same(other)
        return Character(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "Character") -> "Character":
        self._same(other)
        return Character(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, other) -> "Character":
        if isinstance(other, Character):
            self._same(other)
            return Character(self.group, [a * b for a, b in zip(self.values, other.values)])
        return Character(self.group, [a * other for a in self.values])

    __rmul__ = __mul__

    def conj(self) -> "Character":
        return Character(self.group, [v.conjugate() for v in self.values])

    def galois(self, k: int) -> "Character":
        return Character(self.group, [v.galois(k) for v in self.values])

    @property
    def dense(self) -> np.ndarray:
        if self._dense is None:
            self._dense = dense_values(self.values, self.group.exponent)
        return self._dense

    def inner(self, other: "Character") -> Fraction:
        """<self, other> = |G|^-1 sum_g self(g) conj(other(g))."""
        self._same(other)
        G = self.group
        r = rational_inner_products(self.dense[None], other.dense[None], np.array(G.classes.sizes))
        return r[0, 0] / G.order

    def norm(self) -> Fraction:
        return self.inner(self)

    # --- restriction and induction -------------------------------------------

    def restrict(self, H: PermGroup) -> "Character":
        fusion = fusion_map(H, self.group)
        return Character(H, [self.values[c] for c in fusion])

    def induce(self, G: PermGroup) -> "Character":
        H = self.group
        fusion = fusion_map(H, G)
        sums = [_ZERO] * len(G.classes)
        for c, (gc, size) in enumerate(zip(fusion, H.classes.sizes)):
            if self.values[c]:
                sums[gc] = sums[gc] + self.values[c] * size
        vals = []
        for gc, s in enumerate(sums):
            factor = Fraction(G.order, H.order * G.classes.sizes[gc])
            vals.append(s * factor)
        return Character(G, vals)

    def conjugate_by(self, g: Perm) -> "Character":
        """theta^g, a character of S^g where theta^g(y) = theta(g y g^-1)."""
        S = self.group
        T = S if all((s ^ g) in S for s in S.gens) else st.conjugate(S, g)
        ginv = g.inverse()
        return Character(T, [self.values[S.class_of(y ^ ginv)] for y in T.classes.reps])

    # --- kernels and determinants ----------------------------------------

    def kernel_classes(self) -> list[int]:
        d = self.values[0]
        return [i for i, v in enumerate(self.values) if v == d]

    def kernel(self) -> PermGroup:
        G = self.group
        mask = np.isin(G.classes.element_class, self.kernel_classes())
        return G.subgroup_from_mask(mask)

    def eigenvalue_multiplicities(self, c: int) -> list[int]:
        """Multiplicity of zeta_o^k (k = 0..o-1) as eigenvalue at class c, o = element order."""
        G = self.group
        o = G.classes.orders[c]
        if self._res is None:
            self._res = _residues(self)
        p, res = self._res
        z = root_of_unity(p, o)
        powers = [G.power_map(l)[c] for l in range(o)]
        oinv = pow(o, -1, p)
        out = []
        for k in range(o):
            s = 0
            for l, cl in enumerate(powers):
                s += res[cl] * pow(z, (-k * l) % o, p)
            m = s * oinv % p
            if m > self.degree:
                raise ArithmeticError("eigenvalue multiplicity out of range: not a character")
            out.append(m)
        if sum(out) != self.degree:
            raise ArithmeticError("eigenvalue multiplicities do not add up to the degree")
        return out

    def determinant(self) -> "Character":
        """The linear character g -> det(rho(g))."""
        if self._det is None:
            G = self.group
            vals = []
            order = 1
            for c, o in enumerate(G.classes.orders):
                m = self.eigenvalue_multiplicities(c)
                s = sum(k * mk for k, mk in enumerate(m)) % o
                vals.append(Cyclotomic.zeta(o, s))
                order = math.lcm(order, o // math.gcd(s, o))
            self._det = Character(G, vals)
            self._dord = order
        return self._det

    def linear_order(self) -> int:
        """Order of a linear character in the group of linear characters."""
        if not self.is_linear():
            raise ValueError("not a linear character")
        out = 1
        for c, o in enumerate(self.group.classes.orders):
            k = self.eigenvalue_multiplicities(c).index(1)
            out = math.lcm(out, o // math.gcd(k, o))
        return out

    def determinant_order(self) -> int:
        if self._dord is None:
            self.determinant()
        return self._dord


def root_of_unity_order(v: Cyclotomic) -> int:
    """Order of a root of unity given in canonical form."""
    n = v.n
    for d in sorted(k for k in range(1, 2 * n + 1) if (2 * n) % k == 0):
        if v ** d == 1:
            return d
    raise ValueError(f"{v} is not a root of unity")


def _residues(chi: Character) -> tuple[int, list[int]]:
    G = chi.group
    e = G.exponent
    p = choose_prime(e, max(2 * chi.degree + 1, 2 * e + 1, 1000))
    z = root_of_unity(p, e)
    res = []
    for v in chi.values:
        s = 0
        step = e // v.n
        for i, c in v.coeffs.items():
            c = Fraction(c)
            s += c.numerator * pow(c.denominator, -1, p) * pow(z, i * step, p)
        res.append(s % p)
    return p, res


_FUSION: dict[tuple[str, str], list[int]] = {}


def fusion_map(H: PermGroup, G: PermGroup) -> list[int]:
    """Class of G containing each class representative of H."""
    key = (H.fingerprint, G.fingerprint)
    if key not in _FUSION:
        reps = np.array([r.images for r in H.classes.reps], dtype=G.elements.dtype)
        try:
            _FUSION[key] = [int(c) for c in G.classes_of(reps)]
        except ContainmentError:
            raise ContainmentError("restriction/induction needs H <= G") from None
    return _FUSION[key]


def inflate(chi: Character, q: "st.Quotient") -> Character:
    """Lift a character of G/N to G."""
    G = q.group
    vals = [chi(q.project(r)) for r in G.classes.reps]
    return Character(G, vals)


def deflate(chi: Character, q: "st.Quotient") -> Character:
    """The character of G/N whose inflation is chi (needs N <= ker chi)."""
    K = chi.kernel()
    if not st.is_subgroup(K, q.kernel):
        raise ValueError("kernel of the quotient is not inside ker(chi)")
    Q = q.image
    return Character(Q, [chi(q.preimage(r)) for r in Q.classes.reps])
