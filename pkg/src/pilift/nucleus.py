"""Maximal factorable pairs, the normal and subnormal nucleus recursions, vertices, B_pi and N_pi."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import structure as st
from .character import Character
from .chartable import character_table, irr
from .permgroup import PermGroup
from .pitheory import is_pi_special, pi_factorize, restrict_to_pi_elements
from .primes import PrimeSet

NORMAL = "normal"
SUBNORMAL = "subnormal"


class NucleusError(AssertionError):
    """An invariant of the nucleus construction failed; carries the partial chain."""

    def __init__(self, msg: str, chain=None):
        super().__init__(msg)
        self.chain = chain or []


@dataclass(frozen=True)
class FactorablePair:
    subgroup: PermGroup
    relation: str
    theta: Character
    factors: tuple[Character, Character]


@dataclass
class NucleusCertificate:
    mode: str
    pi: PrimeSet
    chain: list[tuple[PermGroup, Character]]
    terminal: tuple[PermGroup, Character]
    factors: tuple[Character, Character]
    vertex: Optional[tuple[PermGroup, Character]] = None
    in_B_pi: Optional[bool] = None
    in_N_pi: Optional[bool] = None
    notes: list[str] = field(default_factory=list)
    # normal mode: per step, whether chi_N has a single constituent (not just one orbit)
    strictly_unique: list[bool] = field(default_factory=list)

    def to_dict(self) -> dict:
        def pair(H, chi):
            return {
                "order": H.order,
                "generators": [g.to_cycle_string() for g in H.gens],
                "values": [str(v) for v in chi.values],
            }
        U, eps = self.terminal
        out = {
            "mode": self.mode,
            "pi": self.pi.label(),
            "chain": [pair(H, chi) for H, chi in self.chain],
            "terminal": pair(U, eps),
        }
        if self.vertex is not None:
            Q, delta = self.vertex
            out["vertex_Q_order"] = Q.order
            out["delta_trivial"] = delta.is_trivial()
            out["pair_strictly_unique"] = list(self.strictly_unique)
        out["in_B_pi"] = self.in_B_pi
        out["in_N_pi"] = self.in_N_pi
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# --- Clifford theory --------------------------------------------------------


def inertia_group(G: PermGroup, S: PermGroup, theta: Character) -> PermGroup:
    """Stabilizer of theta in N_G(S)."""
    N = st.normalizer(G, S) if not st.is_normal(G, S) else G
    fixed = [g for g in _stabilizer_gens(N, S, theta)]
    return N.subgroup(fixed) if fixed else st.trivial(N)


def _stabilizer_gens(N: PermGroup, S: PermGroup, theta: Character) -> list:
    # theta^g depends only on the class permutation g induces on S
    from .permgroup import orbit_stabilizer

    def act(vals, g):
        return theta.__class__(S, vals).conjugate_by(g).values

    _, stab = orbit_stabilizer(N, theta.values, act)
    return list(stab.gens) + list(S.gens)


def clifford_correspondent(G: PermGroup, T: PermGroup, theta: Character, chi: Character) -> Character:
    """The unique psi in Irr(T | theta) with psi^G = chi."""
    S = theta.group
    found = []
    for m, psi in character_table(T).constituents(chi.restrict(T)):
        if psi.restrict(S).inner(theta) and psi.induce(G) == chi:
            found.append(psi)
    if len(found) != 1:
        raise NucleusError(f"{len(found)} Clifford correspondents found, expected one")
    return found[0]


def pairs_conjugate(G: PermGroup, S1: PermGroup, t1: Character, S2: PermGroup, t2: Character) -> bool:
    """Whether (S1, t1)^g = (S2, t2) for some g in G."""
    if S1.order != S2.order:
        return False
    labels, reps = G.right_cosets(st.normalizer(G, S1))
    N2 = st.normalizer(G, S2)
    for r in reps:
        g = G.element(r)
        if all((s ^ g) in S2 for s in S1.gens):
            u = t1.conjugate_by(g)
            u = Character(S2, [u(y) for y in S2.classes.reps])
            if _conjugate_within(N2, S2, u, t2):
                return True
    return False


def _conjugate_within(N: PermGroup, S: PermGroup, a: Character, b: Character) -> bool:
    if a == b:
        return True
    seen = {a.values}
    queue = [a]
    while queue:
        x = queue.pop()
        for g in N.gens:
            y = x.conjugate_by(g)
            y = Character(S, [y(s) for s in S.classes.reps])
            if y == b:
                return True
            if y.values not in seen:
                seen.add(y.values)
                queue.append(y)
    return False


# --- maximal factorable pairs ----------------------------------------------


def _factorable(theta: Character, pi: PrimeSet):
    return pi_factorize(theta, pi)


_CONSTITUENTS: dict = {}


def _constituents(chi: Character, S: PermGroup) -> list[Character]:
    if S.order == chi.group.order:
        return [chi]
    key = (chi.key(), S.fingerprint)
    out = _CONSTITUENTS.get(key)
    if out is None:
        out = [c for _, c in character_table(S).constituents(chi.restrict(S))]
        _CONSTITUENTS[key] = out
    return out


def maximal_factorable_pair(G: PermGroup, chi: Character, pi: PrimeSet, mode: str,
                            fast: bool = False) -> FactorablePair:
    if mode == NORMAL:
        return _maximal_normal(G, chi, pi, fast)
    if mode == SUBNORMAL:
        return _maximal_subnormal(G, chi, pi, fast)
    raise ValueError(f"unknown mode {mode!r}")


def _maximal_normal(G, chi, pi, fast):
    # constituents of chi_N are G-conjugate, so factorability is a property of N
    good = []
    for N in reversed(st.normal_subgroups(G)):
        if any(st.is_subgroup(M, N) for M in good):
            continue
        theta = _constituents(chi, N)[0]
        f = _factorable(theta, pi)
        if f is not None:
            good.append(N)
            if fast:
                return FactorablePair(N, NORMAL, theta, f)
    if len(good) != 1:
        raise NucleusError(f"{len(good)} maximal factorable normal subgroups, expected one")
    N = good[0]
    theta = _constituents(chi, N)[0]
    return FactorablePair(N, NORMAL, theta, _factorable(theta, pi))


def _maximal_subnormal(G, chi, pi, fast):
    maximal: list[tuple[PermGroup, Character, tuple]] = []
    masks = {}
    for S in reversed(st.subnormal_subgroups(G)):
        masks[S.fingerprint] = mS = G.mask_of(S)
        above = [(M, phi) for M, phi, _ in maximal
                 if M.order > S.order and not (mS & ~masks[M.fingerprint]).any()]
        under = set()
        for M, phi in above:
            under.update(c.values for c in _constituents(phi, S))
        for theta in _constituents(chi, S):
            if theta.values in under:
                continue
            f = _factorable(theta, pi)
            if f is not None:
                maximal.append((S, theta, f))
                if fast:
                    return FactorablePair(S, SUBNORMAL, theta, f)
    S0, t0, f0 = maximal[0]
    for S, t, _ in maximal[1:]:
        if not pairs_conjugate(G, S0, t0, S, t):
            raise NucleusError("maximal factorable subnormal pairs are not all conjugate")
    return FactorablePair(S0, SUBNORMAL, t0, f0)


# --- nucleus recursion ------------------------------------------------------


_NUCLEI: dict = {}


def nucleus(G: PermGroup, chi: Character, pi: PrimeSet, mode: str = NORMAL,
            fast: bool = False) -> NucleusCertificate:
    key = (G.fingerprint, chi.values, pi, mode)
    cert = _NUCLEI.get(key)
    if cert is not None:
        return cert
    if not st.is_pi_separable(G, pi):
        from .pitheory import PreconditionError
        raise PreconditionError(f"group of order {G.order} is not {pi.label()}-separable")
    chain = [(G, chi)]
    strict = []
    H, psi = G, chi
    while True:
        f = pi_factorize(psi, pi)
        if f is not None:
            break
        pair = maximal_factorable_pair(H, psi, pi, mode, fast)
        if mode == NORMAL:
            strict.append(len(_constituents(psi, pair.subgroup)) == 1)
        T = inertia_group(H, pair.subgroup, pair.theta)
        if T.order >= H.order:
            raise NucleusError("inertia group does not descend", chain)
        psi = clifford_correspondent(H, T, pair.theta, psi)
        H = T
        chain.append((H, psi))
    # stepwise irreducible induction back up to chi
    for (A, a), (B, b) in zip(chain, chain[1:]):
        if b.induce(A) != a:
            raise NucleusError("nucleus chain does not induce back", chain)
    cert = NucleusCertificate(mode, pi, chain, (H, psi), f, strictly_unique=strict)
    alpha, beta = f
    special = beta.is_trivial()
    if mode == NORMAL:
        Q = st.hall_pi_subgroup(H, pi.complement())
        delta = beta.restrict(Q)
        cert.vertex = (Q, delta)
        cert.in_N_pi = delta.is_trivial()
        if cert.in_N_pi != special:
            cert.notes.append("delta = 1_Q disagrees with the nucleus character being pi-special")
    else:
        cert.in_B_pi = bool(is_pi_special(psi, pi))
    _NUCLEI[key] = cert
    return cert


def b_pi(G: PermGroup, pi: PrimeSet, fast: bool = False) -> list[Character]:
    return [chi for chi in irr(G) if nucleus(G, chi, pi, SUBNORMAL, fast).in_B_pi]


def n_pi(G: PermGroup, pi: PrimeSet, fast: bool = False) -> list[Character]:
    return [chi for chi in irr(G) if nucleus(G, chi, pi, NORMAL, fast).in_N_pi]


def vertex_partition(G: PermGroup, pi: PrimeSet) -> list[list[Character]]:
    """Irr(G) grouped by the conjugacy class of its normal vertex (Q, delta)."""
    groups: list[tuple[tuple, list[Character]]] = []
    for chi in irr(G):
        Q, d = nucleus(G, chi, pi, NORMAL).vertex
        for (Q0, d0), members in groups:
            if pairs_conjugate(G, Q0, d0, Q, d):
                members.append(chi)
                break
        else:
            groups.append(((Q, d), [chi]))
    return [m for _, m in groups]


@dataclass
class RestrictionReport:
    normal_order: int
    b_violations: list[tuple[int, int]]    # (index of chi in Irr(G), index of theta in Irr(N))
    n_failures: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return not self.b_violations


def check_restriction_theorem(G: PermGroup, N: PermGroup, pi: PrimeSet) -> RestrictionReport:
    """B_pi restrictions must stay in B_pi(N); N_pi failures are only reported."""
    if not st.is_normal(G, N):
        raise st.NotNormalError("N is not normal in G")
    tG, tN = character_table(G), character_table(N)
    bN = set(c.values for c in b_pi(N, pi))
    nN = set(c.values for c in n_pi(N, pi))
    bv, nf = [], []
    for chi in b_pi(G, pi):
        for _, th in tN.constituents(chi.restrict(N)):
            if th.values not in bN:
                bv.append((tG.index(chi), tN.index(th)))
    for eta in n_pi(G, pi):
        for _, th in tN.constituents(eta.restrict(N)):
            if th.values not in nN:
                nf.append((tG.index(eta), tN.index(th)))
    return RestrictionReport(N.order, bv, nf)


def lift_summary(G: PermGroup, pi: PrimeSet) -> dict:
    """Sizes of B_pi, N_pi and I_pi and whether each restricts injectively."""
    from .pitheory import i_pi
    b, n = b_pi(G, pi), n_pi(G, pi)
    ib = [restrict_to_pi_elements(c, pi).values for c in b]
    inn = [restrict_to_pi_elements(c, pi).values for c in n]
    ip = i_pi(G, pi, b)
    return {
        "b_pi": len(b),
        "n_pi": len(n),
        "i_pi": len(ip),
        "b_injective": len(set(ib)) == len(ib),
        "n_injective": len(set(inn)) == len(inn),
        "same_image": set(ib) == set(inn),
    }
