"""pi-special characters, pi-factorization, partial characters and the sign character."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import structure as st
from .character import Character
from .chartable import character_table, irr
from .cyclotomic import Cyclotomic
from .permgroup import PermGroup
from .primes import PrimeSet


class PreconditionError(ValueError):
    pass


def _require_separable(G: PermGroup, pi: PrimeSet) -> None:
    if not st.is_pi_separable(G, pi):
        raise PreconditionError(f"group of order {G.order} is not {pi.label()}-separable")


# --- pi-special recognition ------------------------------------------------


@dataclass(frozen=True)
class SpecialVerdict:
    special: bool
    reason: str = ""
    witness_order: int = 0       # |S| of the violating subnormal subgroup
    witness_det_order: int = 0   # determinant order of the violating constituent
    witness: Optional[Character] = None

    def __bool__(self) -> bool:
        return self.special


def _check_terms(chi: Character, pi: PrimeSet, terms: Sequence[PermGroup]) -> SpecialVerdict:
    if not pi.is_pi_number(chi.degree):
        return SpecialVerdict(False, f"degree {chi.degree} is not a {pi.label()}-number")
    G = chi.group
    for S in terms:
        if S.order == 1:
            continue
        theta = chi if S.order == G.order else character_table(S).constituents(chi.restrict(S))[0][1]
        # constituents of chi_S are conjugate, so one of them decides
        o = theta.determinant_order()
        if not pi.is_pi_number(o):
            return SpecialVerdict(False, "determinant order", S.order, o, theta)
    return SpecialVerdict(True)


_SPECIAL: dict = {}


def is_pi_special(chi: Character, pi: PrimeSet) -> SpecialVerdict:
    """Degree and determinant-order test along a chief series of the group."""
    key = (chi.key(), pi)
    v = _SPECIAL.get(key)
    if v is None:
        G = chi.group
        _require_separable(G, pi)
        v = _check_terms(chi, pi, reversed(st.chief_series(G)))
        _SPECIAL[key] = v
    return v


def is_pi_special_bruteforce(chi: Character, pi: PrimeSet) -> SpecialVerdict:
    """The definition verbatim: every subnormal subgroup and every constituent."""
    if not pi.is_pi_number(chi.degree):
        return SpecialVerdict(False, f"degree {chi.degree} is not a {pi.label()}-number")
    G = chi.group
    for S in reversed(st.subnormal_subgroups(G)):
        r = chi if S.order == G.order else chi.restrict(S)
        cons = [r] if S.order == G.order else [c for _, c in character_table(S).constituents(r)]
        for theta in cons:
            o = theta.determinant_order()
            if not pi.is_pi_number(o):
                return SpecialVerdict(False, "determinant order", S.order, o, theta)
    return SpecialVerdict(True)


def pi_special_characters(G: PermGroup, pi: PrimeSet) -> list[Character]:
    return [chi for chi in irr(G) if is_pi_special(chi, pi)]


# --- factorization ---------------------------------------------------------


_FACTOR: dict = {}


def pi_factorize(chi: Character, pi: PrimeSet) -> Optional[tuple[Character, Character]]:
    """The unique (alpha, beta), alpha pi-special and beta pi'-special, with alpha*beta = chi."""
    key = (chi.key(), pi)
    if key in _FACTOR:
        return _FACTOR[key]
    G = chi.group
    pic = pi.complement()
    da, db = pi.part(chi.degree), pic.part(chi.degree)
    if pi.is_pi_number(G.order):
        found = [(chi, Character.trivial(G))]
    elif pic.is_pi_number(G.order):
        found = [(Character.trivial(G), chi)]
    else:
        rows = irr(G)
        alphas = [a for a in rows if a.degree == da and is_pi_special(a, pi)]
        betas = [b for b in rows if b.degree == db and is_pi_special(b, pic)]
        found = [(a, b) for a in alphas for b in betas if a * b == chi]
    if len(found) > 1:
        raise AssertionError("pi-factorization is not unique")
    out = found[0] if found else None
    _FACTOR[key] = out
    return out


def is_pi_factorable(chi: Character, pi: PrimeSet) -> bool:
    return pi_factorize(chi, pi) is not None


def pi_special_extension(G: PermGroup, M: PermGroup, gamma: Character, pi: PrimeSet):
    """Unique pi-special extension (pi'-index) or the pi-special list Irr(G|gamma) (pi-quotient)."""
    if not st.is_normal(G, M):
        raise PreconditionError("M is not normal in G")
    if not is_pi_special(gamma, pi):
        raise PreconditionError("gamma is not pi-special")
    for g in G.gens:
        if gamma.conjugate_by(g) != gamma:
            raise PreconditionError("gamma is not G-invariant")
    idx = G.order // M.order
    if idx == 1:
        return Character(G, [gamma(r) for r in G.classes.reps])
    over = [chi for m, chi in character_table(G).constituents(gamma.induce(G))]
    if pi.complement().is_pi_number(idx):
        ext = [chi for chi in over if chi.degree == gamma.degree and is_pi_special(chi, pi)]
        if len(ext) != 1:
            raise AssertionError(f"{len(ext)} pi-special extensions found, expected exactly one")
        if ext[0].restrict(M) != gamma:
            raise AssertionError("pi-special extension does not restrict to gamma")
        return ext[0]
    if pi.is_pi_number(idx):
        for chi in over:
            if not is_pi_special(chi, pi):
                raise AssertionError("a character over a pi-special gamma with pi-quotient is not pi-special")
        return over
    raise PreconditionError("|G:M| is neither a pi-number nor a pi'-number")


# --- partial characters ----------------------------------------------------


@dataclass(frozen=True)
class PiClassData:
    group: PermGroup
    pi: PrimeSet
    classes: tuple[int, ...]


def pi_classes(G: PermGroup, pi: PrimeSet) -> PiClassData:
    return PiClassData(G, pi, tuple(i for i, o in enumerate(G.classes.orders) if pi.is_pi_number(o)))


@dataclass(frozen=True)
class PartialCharacter:
    classes: PiClassData = field(compare=False, hash=False)
    values: tuple[Cyclotomic, ...]
    provenance: tuple[Character, ...] = field(default=(), compare=False, hash=False)

    @property
    def degree(self) -> int:
        return int(self.values[0])

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values) + ")"


def restrict_to_pi_elements(chi: Character, pi: PrimeSet) -> PartialCharacter:
    pc = pi_classes(chi.group, pi)
    return PartialCharacter(pc, tuple(chi.values[i] for i in pc.classes), (chi,))


def lifts(phi: PartialCharacter) -> list[Character]:
    """Every ordinary irreducible restricting to phi on pi-elements."""
    pc = phi.classes
    return [chi for chi in irr(pc.group) if tuple(chi.values[i] for i in pc.classes) == phi.values]


def i_pi(G: PermGroup, pi: PrimeSet, b: Sequence[Character] | None = None) -> list[PartialCharacter]:
    """The partial characters chi^0 for chi in B_pi(G)."""
    if b is None:
        from .nucleus import b_pi
        b = b_pi(G, pi)
    seen: dict = {}
    for chi in b:
        phi = restrict_to_pi_elements(chi, pi)
        if phi.values in seen:
            raise AssertionError("two members of B_pi restrict to the same partial character")
        seen[phi.values] = phi
    return list(seen.values())


# --- standard sign character -----------------------------------------------


def delta_sign(G: PermGroup, H: PermGroup, pi: PrimeSet) -> Character:
    """Sign of the permutation action of H on the right cosets of H (maximal, odd pi-index)."""
    if 2 in pi:
        raise PreconditionError("delta_sign needs 2 outside pi")
    st._require_subgroup(G, H)
    idx = st.index(G, H)
    if not pi.is_pi_number(idx):
        raise PreconditionError(f"index {idx} is not a {pi.label()}-number")
    if not st.is_maximal(G, H):
        raise PreconditionError("H is not maximal in G")
    cosets = G.right_cosets(H)
    vals = [G.coset_action(H, h, cosets).sign() for h in H.classes.reps]
    delta = Character(H, vals)
    K = st.core(G, H)
    kc = set(delta.kernel_classes())
    if any(c not in kc for c in set(H.classes_of(K.elements))):
        raise AssertionError("core_G(H) is not inside ker(delta)")
    return delta
