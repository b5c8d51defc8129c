"""Subgroup operations and the solvable / pi-separable structure theory."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .perm import Perm
from .permgroup import ContainmentError, NotNormalError, PermGroup
from .primes import PrimeSet, prime_divisors


class NoHallSubgroup(RuntimeError):
    pass


def trivial(G: PermGroup) -> PermGroup:
    return PermGroup(G.degree, (), "1").interned()


def group(G: PermGroup, gens: Sequence[Perm], name: str | None = None) -> PermGroup:
    return PermGroup(G.degree, gens, name).interned()


def _require_subgroup(G: PermGroup, H: PermGroup) -> None:
    if not is_subgroup(G, H):
        raise ContainmentError("H is not a subgroup of G")


def is_subgroup(G: PermGroup, H: PermGroup) -> bool:
    return H.degree == G.degree and all(h in G for h in H.gens)


def is_normal(G: PermGroup, H: PermGroup) -> bool:
    _require_subgroup(G, H)
    return all((h ^ g) in H for h in H.gens for g in G.gens)


def index(G: PermGroup, H: PermGroup) -> int:
    _require_subgroup(G, H)
    return G.order // H.order


def normal_closure(G: PermGroup, gens: Sequence[Perm] | PermGroup) -> PermGroup:
    """Smallest normal subgroup of G containing the given elements."""
    if isinstance(gens, PermGroup):
        gens = gens.gens
    cur = list(gens)
    N = PermGroup(G.degree, cur)
    queue = list(cur)
    while queue:
        n = queue.pop()
        for g in G.gens:
            c = n ^ g
            if c not in N:
                cur.append(c)
                N = PermGroup(G.degree, cur)
                queue.append(c)
    return N.interned()


def is_subnormal(G: PermGroup, H: PermGroup) -> bool:
    """Descend through iterated normal closures of H."""
    _require_subgroup(G, H)
    K = G
    while True:
        C = normal_closure(K, H)
        if C.order == K.order:
            return C.order == H.order
        K = C


def core(G: PermGroup, H: PermGroup) -> PermGroup:
    """Largest normal subgroup of G inside H (the intersection of conjugates)."""
    _require_subgroup(G, H)
    members = set(H.element_list())
    while True:
        keep = {h for h in members if all((h ^ g) in members for g in G.gens)}
        if keep == members:
            break
        members = keep
    return group(G, sorted(members))


def normalizer(G: PermGroup, H: PermGroup) -> PermGroup:
    mask = np.ones(G.order, dtype=bool)
    for h in H.gens:
        mask &= H.locate(G.conjugates_of_all(h)) >= 0
    return G.subgroup_from_mask(mask)


def centralizer(G: PermGroup, H: PermGroup | Perm) -> PermGroup:
    gens = [H] if isinstance(H, Perm) else H.gens
    X = G.elements
    mask = np.ones(G.order, dtype=bool)
    for h in gens:
        hi = np.array(h.images)
        # x h == h x  <=>  h(x(i)) == x(h(i))
        mask &= (hi[X] == X[:, hi]).all(axis=1)
    return G.subgroup_from_mask(mask)


def intersection(A: PermGroup, B: PermGroup) -> PermGroup:
    small, big = (A, B) if A.order <= B.order else (B, A)
    mask = big.locate(small.elements) >= 0
    return small.subgroup_from_mask(mask)


def join(*groups: PermGroup) -> PermGroup:
    gens = [g for H in groups for g in H.gens]
    return PermGroup(groups[0].degree, gens).interned()


def conjugate(H: PermGroup, g: Perm) -> PermGroup:
    return PermGroup(H.degree, [h ^ g for h in H.gens]).interned()


def product_set_equals(A: PermGroup, B: PermGroup, target: PermGroup) -> bool:
    """Whether the set A*B equals target (as sets)."""
    prods = {a * b for a in A.element_list() for b in B.element_list()}
    return len(prods) == target.order and all(p in target for p in prods)


@dataclass
class SubgroupReport:
    is_subgroup: bool
    is_normal: bool
    is_subnormal: bool
    index: int
    core: PermGroup
    normal_closure: PermGroup
    normalizer: PermGroup
    centralizer: PermGroup


def subgroup_ops(G: PermGroup, H: PermGroup) -> SubgroupReport:
    _require_subgroup(G, H)
    return SubgroupReport(
        is_subgroup=True,
        is_normal=is_normal(G, H),
        is_subnormal=is_subnormal(G, H),
        index=index(G, H),
        core=core(G, H),
        normal_closure=normal_closure(G, H),
        normalizer=normalizer(G, H),
        centralizer=centralizer(G, H),
    )


# --- series ----------------------------------------------------------------

def commutator_subgroup(G: PermGroup, A: PermGroup, B: PermGroup) -> PermGroup:
    comms = [a.inverse() * b.inverse() * a * b for a in A.gens for b in B.gens]
    return normal_closure(G, [c for c in comms if not c.is_identity()])


def derived_subgroup(G: PermGroup) -> PermGroup:
    return commutator_subgroup(G, G, G)


def derived_series(G: PermGroup) -> list[PermGroup]:
    series = [G.interned()]
    while True:
        D = derived_subgroup(series[-1])
        if D.order == series[-1].order:
            return series
        series.append(D)


def is_solvable(G: PermGroup) -> bool:
    return derived_series(G)[-1].order == 1


@lru_cache(maxsize=None)
def _chief_series(G: PermGroup) -> tuple[PermGroup, ...]:
    normals = normal_subgroups(G)
    masks = [G.mask_of(N) for N in normals]
    cur = len(normals) - 1
    series = [normals[cur]]
    while normals[cur].order > 1:
        inside = [i for i in range(cur) if not (masks[i] & ~masks[cur]).any()]
        cur = max(inside, key=lambda i: normals[i].order)
        series.append(normals[cur])
    return tuple(reversed(series))


def chief_series(G: PermGroup) -> list[PermGroup]:
    """Ascending chief series 1 = N_0 < ... < N_r = G.

    Built downward from G: each step takes a largest normal subgroup of G
    strictly inside the previous term, so no normal subgroup fits between.
    """
    return list(_chief_series(G.interned()))


def chief_factor_orders(G: PermGroup) -> list[int]:
    s = chief_series(G)
    return [b.order // a.order for a, b in zip(s, s[1:])]


def is_pi_separable(G: PermGroup, pi: PrimeSet) -> bool:
    return _is_pi_separable(G.interned(), pi)


@lru_cache(maxsize=None)
def _is_pi_separable(G: PermGroup, pi: PrimeSet) -> bool:
    rho = pi.complement()
    return all(pi.is_pi_number(f) or rho.is_pi_number(f) for f in chief_factor_orders(G))


@dataclass
class StructureSeries:
    derived_series: list[PermGroup]
    chief_series: list[PermGroup]
    is_solvable: bool
    pi_separable: dict


def structure_series(G: PermGroup, pis: Sequence[PrimeSet] = ()) -> StructureSeries:
    return StructureSeries(
        derived_series=derived_series(G),
        chief_series=chief_series(G),
        is_solvable=is_solvable(G),
        pi_separable={pi.label(): is_pi_separable(G, pi) for pi in pis},
    )


def o_pi(G: PermGroup, pi: PrimeSet) -> PermGroup:
    """Largest normal pi-subgroup.

    An element lies in O_pi(G) exactly when its normal closure is a
    pi-group, so O_pi(G) is generated by those class representatives.
    """
    gens = []
    for x, o in zip(G.classes.reps, G.classes.orders):
        if o == 1 or not pi.is_pi_number(o):
            continue
        if pi.is_pi_number(normal_closure(G, [x]).order):
            gens.append(x)
    return normal_closure(G, gens) if gens else trivial(G)


# --- Sylow and Hall subgroups ---------------------------------------------

def _grow(G: PermGroup, pi: PrimeSet, target: int, start: PermGroup) -> PermGroup | None:
    """Greedily enlarge a pi-subgroup by pi-elements while it stays a pi-group."""
    H = start
    candidates = [x for x in G.element_list() if pi.is_pi_number(x.order())]
    # prime-power elements first; the sort is stable so ties keep lex order
    candidates.sort(key=lambda x: len(prime_divisors(x.order())))
    while H.order < target:
        for x in candidates:
            if x in H:
                continue
            K = PermGroup(G.degree, list(H.gens) + [x])
            if pi.is_pi_number(K.order) and target % K.order == 0:
                H = K
                break
        else:
            return None
    return H.interned()


def sylow_subgroup(G: PermGroup, p: int) -> PermGroup:
    pi = PrimeSet.of([p])
    H = _grow(G, pi, pi.part(G.order), trivial(G))
    assert H is not None, "Sylow's theorem guarantees progress"
    return H


def hall_pi_subgroup(G: PermGroup, pi: PrimeSet) -> PermGroup:
    """A subgroup of order the pi-part of |G|.

    Seeded with a Sylow subgroup for the largest prime of pi dividing |G|
    and grown greedily by pi-elements.  In a solvable group every
    pi-subgroup lies in a Hall pi-subgroup, so the greedy step never stalls;
    for non-solvable groups a bounded backtracking search is used instead.
    """
    target = pi.part(G.order)
    if target == 1:
        return trivial(G)
    if target == G.order:
        return G.interned()
    primes = [p for p in prime_divisors(G.order) if p in pi]
    seed = sylow_subgroup(G, max(primes))
    if is_solvable(G):
        H = _grow(G, pi, target, seed)
        if H is None:
            raise AssertionError("greedy Hall search stalled in a solvable group")
        return H
    H = _backtrack_hall(G, pi, target)
    if H is None:
        raise NoHallSubgroup(f"no Hall {pi.label()}-subgroup of order {target}")
    return H


def _backtrack_hall(G: PermGroup, pi: PrimeSet, target: int, limit: int = 20000) -> PermGroup | None:
    elems = [x for x in G.element_list() if pi.is_pi_number(x.order()) and not x.is_identity()]
    seen: set[str] = set()
    stack = [trivial(G)]
    steps = 0
    while stack and steps < limit:
        H = stack.pop()
        steps += 1
        if H.order == target:
            return H
        for x in elems:
            if x in H:
                continue
            K = PermGroup(G.degree, list(H.gens) + [x])
            if pi.is_pi_number(K.order) and target % K.order == 0:
                K = K.interned()
                if K.fingerprint not in seen:
                    seen.add(K.fingerprint)
                    stack.append(K)
    return None


# --- quotients -------------------------------------------------------------

@dataclass
class Quotient:
    """Permutation image of G on the cosets of a normal subgroup N."""

    group: PermGroup
    kernel: PermGroup
    image: PermGroup
    coset_labels: np.ndarray
    coset_reps: list[int]

    def project(self, g: Perm) -> Perm:
        return self.group.coset_action(self.kernel, g, (self.coset_labels, self.coset_reps))

    def preimage(self, q: Perm) -> Perm:
        """Some element of G mapping to q (q is a permutation of cosets)."""
        # the coset representative r with coset(0) * r = q(0) ... search reps
        target = q(0)
        for c, r in enumerate(self.coset_reps):
            if c == target:
                g = self.group.element(r)
                # g maps coset 0 (= N) to coset c; fix up by a kernel element if needed
                if self.project(g) == q:
                    return g
        for i in range(self.group.order):
            g = self.group.element(i)
            if self.project(g) == q:
                return g
        raise ValueError("no preimage")


def quotient(G: PermGroup, N: PermGroup) -> Quotient:
    if not is_normal(G, N):
        raise NotNormalError("quotient requires a normal subgroup")
    labels, reps = G.right_cosets(N)
    images = [G.coset_action(N, g, (labels, reps)) for g in G.gens]
    m = len(reps)
    Q = PermGroup(m, images, f"{G.name or 'G'}/{N.name or 'N'}").interned()
    # kernel check: the coset action of each generator of N is trivial
    for n in N.gens:
        assert G.coset_action(N, n, (labels, reps)).is_identity()
    assert Q.order * N.order == G.order
    return Quotient(G, N, Q, labels, reps)


# --- lattices ---------------------------------------------------------------

def _class_closure(G: PermGroup, start: np.ndarray) -> np.ndarray:
    """Smallest union of classes containing ``start`` and closed under products."""
    from .chartable import class_product_support
    P = class_product_support(G)
    cur = start.copy()
    cur[0] = True
    while True:
        sel = np.flatnonzero(cur)
        new = cur | P[np.ix_(sel, sel)].any(axis=(0, 1))
        if (new == cur).all():
            return cur
        cur = new


@lru_cache(maxsize=None)
def _normal_subgroups(G: PermGroup) -> tuple[PermGroup, ...]:
    # normal subgroups are the product-closed unions of classes
    k = len(G.classes)
    found: dict[bytes, np.ndarray] = {}
    for c in range(k):
        start = np.zeros(k, dtype=bool)
        start[c] = True
        m = _class_closure(G, start)
        found.setdefault(m.tobytes(), m)
    frontier = list(found.values())
    while frontier:
        new = []
        current = list(found.values())
        for a in frontier:
            for b in current:
                m = _class_closure(G, a | b)
                if m.tobytes() not in found:
                    found[m.tobytes()] = m
                    new.append(m)
        frontier = new
    out = []
    for m in found.values():
        emask = m[G.classes.element_class]
        out.append(G if emask.all() else G.subgroup_from_mask(emask))
    return tuple(sorted(out, key=lambda H: (H.order, H.fingerprint)))


def normal_subgroups(G: PermGroup) -> list[PermGroup]:
    """All normal subgroups, sorted by order."""
    return list(_normal_subgroups(G.interned()))


@lru_cache(maxsize=None)
def _subnormal_subgroups(G: PermGroup) -> tuple[PermGroup, ...]:
    found: dict[str, PermGroup] = {}
    queue = normal_subgroups(G)
    for N in queue:
        found.setdefault(N.fingerprint, N)
    i = 0
    while i < len(queue):
        S = queue[i]
        i += 1
        for M in normal_subgroups(S):
            if M.fingerprint not in found:
                found[M.fingerprint] = M
                queue.append(M)
    return tuple(sorted(found.values(), key=lambda H: (H.order, H.fingerprint)))


def subnormal_subgroups(G: PermGroup) -> list[PermGroup]:
    """All subnormal subgroups, via the closure of the 'normal in' relation."""
    return list(_subnormal_subgroups(G.interned()))


def overgroups(G: PermGroup, R: PermGroup) -> list[PermGroup]:
    """Every subgroup K with R <= K <= G."""
    found = {R.interned().fingerprint: R.interned()}
    queue = [R.interned()]
    while queue:
        K = queue.pop()
        # <K, x> only depends on the right coset K x
        for r in G.right_cosets(K)[1][1:]:
            J = PermGroup(G.degree, list(K.gens) + [G.element(r)]).interned()
            if J.fingerprint not in found:
                found[J.fingerprint] = J
                queue.append(J)
    return sorted(found.values(), key=lambda H: (H.order, H.fingerprint))


def is_maximal(G: PermGroup, H: PermGroup) -> bool:
    _require_subgroup(G, H)
    if H.order == G.order:
        return False
    labels, reps = G.right_cosets(H)
    for r in reps[1:]:
        J = PermGroup(G.degree, list(H.gens) + [G.element(r)])
        if J.order != G.order:
            return False
    return True


def maximal_subgroups_of_prime_power_index(G: PermGroup, q: int) -> list[PermGroup]:
    """Maximal subgroups of q-power index, up to conjugacy (solvable G).

    Any such subgroup contains a Hall q'-subgroup of G, so it suffices to
    search the overgroups of one fixed Hall q'-subgroup.
    """
    R = hall_pi_subgroup(G, PrimeSet.of([q]).complement())
    cands = [K for K in overgroups(G, R) if K.order < G.order
             and PrimeSet.of([q]).is_pi_number(G.order // K.order)]
    out = []
    for K in cands:
        if is_maximal(G, K) and not any(are_conjugate(G, K, M) for M in out):
            out.append(K)
    return out


def are_conjugate(G: PermGroup, A: PermGroup, B: PermGroup) -> bool:
    if A.order != B.order:
        return False
    for i in range(G.order):
        g = G.element(i)
        if all((a ^ g) in B for a in A.gens):
            return True
    return False


def check_isomorphism(G: PermGroup, images: Sequence[Perm], target: PermGroup) -> bool:
    """Whether gens(G)[i] -> images[i] extends to an isomorphism G -> target."""
    n, m = G.degree, target.degree
    graph_gens = [Perm(list(g.images) + [x + n for x in h.images]) for g, h in zip(G.gens, images)]
    graph = PermGroup(n + m, graph_gens)
    image = PermGroup(m, images)
    return graph.order == G.order and image.order == G.order == target.order \
        and all(h in target for h in images)
