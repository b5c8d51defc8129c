"""Group constructors, the corpus groups, and the counterexample family built on U1 and its wreath."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import structure as st
from .character import Character
from .config import GUARDS, GuardError
from .cyclotomic import Cyclotomic
from .perm import Perm
from .permgroup import PermGroup, orbit_stabilizer
from .primes import PrimeSet


class SpecError(ValueError):
    """A constructor specification is not well formed."""


class ConstructionError(AssertionError):
    """A structural fact about a built group failed: the build is wrong."""


# --- basic families ------------------------------------------------------------


def symmetric(n: int) -> PermGroup:
    if n < 2:
        return PermGroup(max(n, 1), [], f"Sym({n})")
    gens = [Perm.from_cycles([[0, 1]], n)]
    if n > 2:
        gens.append(Perm.from_cycles([list(range(n))], n))
    return PermGroup(n, gens, f"Sym({n})")


def alternating(n: int) -> PermGroup:
    gens = [Perm.from_cycles([[0, 1, i]], n) for i in range(2, n)]
    return PermGroup(max(n, 1), gens, f"Alt({n})")


def cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [], "C1")
    return PermGroup(n, [Perm.from_cycles([list(range(n))], n)], f"C{n}")


def dihedral(n: int) -> PermGroup:
    """Dihedral group of order 2n acting on n points (n >= 3)."""
    r = Perm.from_cycles([list(range(n))], n)
    s = Perm([(-i) % n for i in range(n)])
    return PermGroup(n, [r, s], f"D{2 * n}")


def _shift(g: Perm, k: int, degree: int) -> Perm:
    images = list(range(degree))
    for i, j in enumerate(g.images):
        images[i + k] = j + k
    return Perm(images)


def direct_product(A: PermGroup, B: PermGroup, name: str | None = None) -> PermGroup:
    n = A.degree + B.degree
    gens = [_shift(g, 0, n) for g in A.gens] + [_shift(g, A.degree, n) for g in B.gens]
    G = PermGroup(n, gens, name or f"{A.name}x{B.name}")
    if G.order != A.order * B.order:
        raise ConstructionError("direct product has the wrong order")
    return G


@dataclass
class ActionSpec:
    """B acting on A: each generator of B is sent to the images of A's generators."""

    acting: PermGroup
    target: PermGroup
    images: Sequence[Sequence[Perm]]


def _automorphism(A: PermGroup, gen_images: Sequence[Perm]) -> np.ndarray:
    """The map on element indices of A extending a_i -> gen_images[i]."""
    if len(gen_images) != len(A.gens):
        raise SpecError("one image per generator of the target expected")
    for y in gen_images:
        if y not in A:
            raise SpecError("generator image lies outside the target group")
    X = A.elements
    N = len(X)
    out = np.full(N, -1, dtype=np.int64)
    out[A.index_of(A.identity)] = A.index_of(A.identity)
    queue = [A.index_of(A.identity)]
    while queue:
        i = queue.pop()
        x, fx = A.element(i), A.element(int(out[i]))
        for a, b in zip(A.gens, gen_images):
            j, fj = A.index_of(x * a), A.index_of(fx * b)
            if out[j] < 0:
                out[j] = fj
                queue.append(j)
            elif out[j] != fj:
                raise SpecError("generator images do not define a homomorphism")
    if len(set(out.tolist())) != N:
        raise SpecError("generator images do not define an automorphism")
    return out


def semidirect_product(spec: ActionSpec, name: str | None = None) -> PermGroup:
    """A x| B on the elements of A (right translations and automorphisms).

    The natural points of B are appended when B does not act faithfully on A.
    """
    A, B = spec.target, spec.acting
    if len(spec.images) != len(B.gens):
        raise SpecError("one automorphism per generator of the acting group expected")
    X = A.elements
    N = len(X)
    trans = []
    for a in A.gens:
        trans.append(A.locate(X[:, np.array(a.images)]))
    autos = [_automorphism(A, imgs) for imgs in spec.images]
    act = PermGroup(N, [Perm(m.tolist()) for m in autos])
    faithful = act.order == B.order
    n = N if faithful else N + B.degree
    gens = [Perm(t.tolist() + list(range(N, n))) for t in trans]
    for m, b in zip(autos, B.gens):
        tail = [] if faithful else [N + j for j in b.images]
        gens.append(Perm(m.tolist() + tail))
    G = PermGroup(n, gens, name)
    if G.order != A.order * B.order:
        raise SpecError(f"semidirect product has order {G.order}, expected {A.order * B.order}:"
                        " the action is not a homomorphism")
    return G


def conjugation_action(A: PermGroup, B: PermGroup) -> ActionSpec:
    """B acting on a normal subgroup A (of a common overgroup) by conjugation."""
    return ActionSpec(B, A, [[a ^ b for a in A.gens] for b in B.gens])


def wreath_by_swap(U: PermGroup, name: str | None = None) -> PermGroup:
    """(U x U) x| C2 with C2 interchanging the factors, on 2 * deg(U) points."""
    n = U.degree
    swap = Perm(list(range(n, 2 * n)) + list(range(n)))
    gens = [_shift(g, 0, 2 * n) for g in U.gens] + [swap]
    G = PermGroup(2 * n, gens, name or f"{U.name} wr C2")
    if G.order != 2 * U.order ** 2:
        raise ConstructionError("wreath product has the wrong order")
    return G


# --- corpus groups ---------------------------------------------------------


def _g(n: int, *cycles: str, name: str) -> PermGroup:
    return PermGroup(n, [Perm.parse(c, n) for c in cycles], name)


def quaternion() -> PermGroup:
    return _g(8, "(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)", name="Q8")


def sl23() -> PermGroup:
    """SL(2,3) as Q8 extended by the automorphism i -> j -> k of order 3."""
    Q = quaternion()
    i, j = Q.gens
    return semidirect_product(ActionSpec(cyclic(3), Q, [[j, i * j]]), "SL(2,3)")


def frobenius(p: int, q: int) -> PermGroup:
    """C_p x| C_q acting on p points (q divides p - 1)."""
    from .modp import primitive_root
    r = pow(primitive_root(p), (p - 1) // q, p)
    t = Perm.from_cycles([list(range(p))], p)
    m = Perm([(r * x) % p for x in range(p)])
    return PermGroup(p, [t, m], f"C{p}:C{q}")


def corpus_groups() -> dict[str, PermGroup]:
    A4 = alternating(4)
    return {
        "C6": PermGroup(5, [Perm.parse("(1,2,3)(4,5)", 5)], "C6"),
        "S3": symmetric(3),
        "S4": symmetric(4),
        "A4": A4,
        "D8": dihedral(4),
        "Q8": quaternion(),
        "SL(2,3)": sl23(),
        "C7:C3": frobenius(7, 3),
        "C5:C4": frobenius(5, 4),
        "A4xC3": direct_product(A4, cyclic(3), "A4xC3"),
        "U1": counterexample_family().U1,
    }


# --- the U1 / Gamma family ---------------------------------------------------


@dataclass
class CounterexampleFamily:
    U1: PermGroup
    A1: PermGroup
    S1: PermGroup
    K1: PermGroup
    x: Perm
    H1: PermGroup
    L1: PermGroup
    Gamma: Optional[PermGroup] = None
    claims: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.claims)


def counterexample_family(with_gamma: bool = False) -> CounterexampleFamily:
    S4, A4 = symmetric(4), alternating(4)
    U1 = semidirect_product(conjugation_action(A4, S4), "U1")
    nA = len(A4.gens)
    A1 = U1.subgroup(U1.gens[:nA], "A1")
    S1 = U1.subgroup(U1.gens[nA:], "S1")
    # right translations by the Klein four-group of A4
    V4 = PermGroup(4, [Perm.parse("(1,2)(3,4)", 4), Perm.parse("(1,3)(2,4)", 4)])
    X = A4.elements
    K1 = U1.subgroup([Perm(A4.locate(X[:, np.array(v.images)]).tolist()) for v in V4.gens], "K1")
    # x = conjugation by (1,2): the S1 image of that transposition
    t = Perm.parse("(1,2)", 4)
    auto = _automorphism(A4, [a ^ t for a in A4.gens])
    x = Perm(auto.tolist())
    H1 = U1.subgroup(list(A1.gens) + [x], "H1")
    L1 = U1.subgroup(list(K1.gens) + [x], "L1")
    fam = CounterexampleFamily(U1, A1, S1, K1, x, H1, L1)
    if with_gamma:
        fam.Gamma = wreath_by_swap(U1, "Gamma")
    return fam


def family_claims(fam: CounterexampleFamily) -> list[tuple[str, bool]]:
    U1, A1, K1, H1, L1 = fam.U1, fam.A1, fam.K1, fam.H1, fam.L1
    pi3 = PrimeSet.of([3])
    S4 = symmetric(4)
    # H1 -> Sym(4): right translation by a -> a, conjugation by (1,2) -> (1,2)
    A4 = alternating(4)
    h_images = list(A4.gens) + [Perm.parse("(1,2)", 4)]
    claims = [
        ("|U1| = 288", U1.order == 288),
        ("A1 and S1 intersect trivially", st.intersection(fam.A1, fam.S1).order == 1),
        ("K1 normal in U1", st.is_normal(U1, K1)),
        ("H1 isomorphic to Sym(4)", H1.order == 24 and st.check_isomorphism(H1, h_images, S4)),
        ("H1 not subnormal in U1", not st.is_subnormal(U1, H1)),
        ("K1 normal in H1", st.is_normal(H1, K1)),
        ("H1/K1 has order 6 and is non-abelian", _quotient_is_s3(H1, K1)),
        ("|H1 : L1| = 3", st.index(H1, L1) == 3),
        ("K1 <= L1 <= H1", st.is_subgroup(L1, K1) and st.is_subgroup(H1, L1)),
        ("L1 meet A1 = K1", st.intersection(L1, A1) == K1),
        ("L1 A1 = H1", st.product_set_equals(L1, A1, H1)),
        ("O3(U1) = 1", st.o_pi(U1, pi3).order == 1),
        ("core_U1(L1) contains K1", st.is_subgroup(st.core(U1, L1), K1)),
    ]
    if fam.Gamma is not None:
        Gm = fam.Gamma
        n = 2 * U1.degree
        L1g = Gm.subgroup([_shift(g, 0, n) for g in L1.gens])
        claims += [
            ("|Gamma| = 165888", Gm.order == 165888),
            ("O3(Gamma) = 1", st.o_pi(Gm, pi3).order == 1),
            ("core_Gamma(L1) = 1", st.core(Gm, L1g).order == 1),
        ]
    return claims


def _quotient_is_s3(H: PermGroup, K: PermGroup) -> bool:
    q = st.quotient(H, K)
    return q.image.order == 6 and not q.image.is_abelian()


def build_section3(scale: str = "gamma") -> CounterexampleFamily:
    """Build the named subgroups and check every group-theoretic claim.

    ``scale`` is ``"gamma"`` (include the wreath Gamma of order 165888) or
    ``"mini"`` (U1 level only).
    """
    if scale not in ("gamma", "mini"):
        raise ValueError("scale must be 'gamma' or 'mini'")
    fam = counterexample_family(with_gamma=scale == "gamma")
    fam.claims = family_claims(fam)
    failed = [name for name, ok in fam.claims if not ok]
    if failed:
        raise ConstructionError("claims failed: " + ", ".join(failed))
    return fam


def full_scale_size() -> dict:
    """Sizes that make the full extension infeasible (reported, never built)."""
    n = 2 * 288 ** 2
    return {"gamma_order": n, "E_order": f"3^{n}", "E_digits": math.floor(n * math.log10(3)) + 1}


# --- coset-module extensions -------------------------------------------------


@dataclass
class ModuleExtensionSpec:
    top: PermGroup
    subgroup: PermGroup
    p: int

    @property
    def dimension(self) -> int:
        return self.top.order // self.subgroup.order


@dataclass
class ModuleExtension:
    spec: ModuleExtensionSpec
    group: PermGroup
    E: PermGroup
    L: PermGroup          # E times the image of the subgroup
    K_top: PermGroup      # image of the top group (a complement to E)
    theta: Character
    stabilizer: PermGroup

    @property
    def d(self) -> int:
        return self.spec.dimension


def coset_module_extension(spec: ModuleExtensionSpec, guards=None) -> ModuleExtension:
    """E = F_p^d with d = |top : L| permuted like the right cosets of L, extended by top.

    theta reads the coordinate of the trivial coset; its stabilizer must be E L.
    """
    g = guards or GUARDS
    Gm, L, p = spec.top, spec.subgroup, spec.p
    if not st.is_subgroup(Gm, L):
        raise SpecError("L is not a subgroup of the top group")
    d = spec.dimension
    if d > g.module_dimension or p > g.module_prime:
        raise GuardError(f"module F_{p}^{d} exceeds the guard (dimension <= {g.module_dimension},"
                         f" p <= {g.module_prime}); the full-scale module has order 3^165888")
    cosets = Gm.right_cosets(L)
    labels, reps = cosets
    faithful = st.core(Gm, L).order == 1
    n = d * p + (0 if faithful else Gm.degree)
    gens = []
    for i in range(d):
        img = list(range(n))
        for v in range(p):
            img[i * p + v] = i * p + (v + 1) % p
        gens.append(Perm(img))
    E = PermGroup(n, gens, f"E({p}^{d})")
    top_gens = []
    for h in Gm.gens:
        blocks = Gm.coset_action(L, h, cosets).images
        img = list(range(n))
        for i in range(d):
            for v in range(p):
                img[i * p + v] = blocks[i] * p + v
        if not faithful:
            for j, k in enumerate(h.images):
                img[d * p + j] = d * p + k
        top_gens.append(Perm(img))
    G = PermGroup(n, gens + top_gens, f"E:{Gm.name or 'top'}")
    if G.order != Gm.order * p ** d:
        raise ConstructionError("extension has the wrong order")
    K_top = G.subgroup(top_gens)
    # images of the generators of L inside the complement
    L_img = []
    for h in L.gens:
        blocks = Gm.coset_action(L, h, cosets).images
        img = list(range(n))
        for i in range(d):
            for v in range(p):
                img[i * p + v] = blocks[i] * p + v
        if not faithful:
            for j, k in enumerate(h.images):
                img[d * p + j] = d * p + k
        L_img.append(Perm(img))
    EL = G.subgroup(gens + L_img, "EL")
    theta = _coordinate_character(E, 0, p)

    # orbit of the functional e_0 under G: translations fix it, blocks move it
    def act(f, x):
        out = [0] * d
        for i in range(d):
            out[x.images[i * p] // p] = f[i]
        return tuple(out)

    start = tuple(1 if i == 0 else 0 for i in range(d))
    orbit, stab = orbit_stabilizer(G, start, act)
    stab = G.subgroup(list(stab.gens) + gens)
    if stab != EL or len(orbit) != d:
        raise ConstructionError("stabilizer of theta differs from E L")
    return ModuleExtension(spec, G, E, EL, K_top, theta, stab)


def _coordinate_character(E: PermGroup, i: int, p: int) -> Character:
    vals = []
    for r in E.classes.reps:
        v = (r.images[i * p] - i * p) % p
        vals.append(Cyclotomic.zeta(p, v))
    return Character(E, vals)


# --- probe -------------------------------------------------------------------


@dataclass
class ProbeCandidate:
    name: str
    top: PermGroup
    subgroup: PermGroup
    p: int
    pi: PrimeSet


@dataclass
class ProbeResult:
    name: str
    order: int = 0
    pi: str = ""
    skipped: str = ""
    b_pi: int = 0
    n_pi: int = 0
    only_b: list[int] = field(default_factory=list)
    only_n: list[int] = field(default_factory=list)
    n_restriction_failures: int = 0
    b_restriction_violations: int = 0
    forced_equal: bool = False

    @property
    def finding(self) -> bool:
        return bool(self.only_b or self.only_n or self.n_restriction_failures)

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def default_candidates() -> list[ProbeCandidate]:
    S3 = symmetric(3)
    t = S3.subgroup([Perm.parse("(1,2)", 3)])
    c3 = S3.subgroup([Perm.parse("(1,2,3)", 3)])
    C2, C3 = cyclic(2), cyclic(3)
    p3, p5, p23 = PrimeSet.of([3]), PrimeSet.of([5]), PrimeSet.of([2, 3])
    return [
        ProbeCandidate("Sym(3)/<(1,2)>, p=3, pi={3}", S3, t, 3, p3),
        ProbeCandidate("Sym(3)/<(1,2)>, p=3, pi={2,3}", S3, t, 3, p23),
        ProbeCandidate("Sym(3)/<(1,2)>, p=2, pi={3}", S3, t, 2, p3),
        ProbeCandidate("Sym(3)/<(1,2,3)>, p=3, pi={3}", S3, c3, 3, p3),
        ProbeCandidate("C2/1, p=3, pi={3}", C2, st.trivial(C2), 3, p3),
        ProbeCandidate("C2/1, p=5, pi={5}", C2, st.trivial(C2), 5, p5),
        ProbeCandidate("C3/1, p=3, pi={3}", C3, st.trivial(C3), 3, p3),
    ]


def extended_candidates() -> list[ProbeCandidate]:
    """Slower candidates (order in the hundreds); about a minute each."""
    D8 = dihedral(4)
    s = D8.subgroup([Perm.parse("(2,4)", 4)])
    return [ProbeCandidate("D8/<(2,4)>, p=3, pi={3}", D8, s, 3, PrimeSet.of([3]))]


def parse_candidates(text: str, base=None) -> list[ProbeCandidate]:
    """Candidate file: one `group-file ; subgroup generators ; pi ; p` line per candidate."""
    from pathlib import Path
    from .perm import parse_group_file
    base = Path(base or ".")
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [x.strip() for x in line.split(";")]
        if len(parts) != 4:
            raise SpecError(f"line {lineno}: expected 4 ';'-separated fields")
        gfile, gens, pi, p = parts
        degree, ggens = parse_group_file((base / gfile).read_text())
        top = PermGroup(degree, ggens, gfile)
        try:
            sub = [Perm.parse(c, degree) for c in re.findall(r"(?:\([^)]*\))+", gens)]
            pi_set = PrimeSet.parse(pi)
        except ValueError as exc:
            raise SpecError(f"line {lineno}: {exc}") from exc
        for h in sub:
            if h not in top:
                raise SpecError(f"line {lineno}: {h.to_cycle_string()} is not in the group")
        H = top.subgroup(sub) if sub else st.trivial(top)
        out.append(ProbeCandidate(f"{gfile}/<{gens}>, p={p}, pi={{{pi}}}", top, H, int(p), pi_set))
    return out


def mini_counterexample_probe(candidates: Sequence[ProbeCandidate] | None = None,
                              progress: Callable[[str], None] | None = None) -> list[ProbeResult]:
    from .chartable import character_table
    from .nucleus import b_pi, check_restriction_theorem, n_pi
    out = []
    for c in candidates if candidates is not None else default_candidates():
        res = ProbeResult(c.name, pi=c.pi.label())
        try:
            ext = coset_module_extension(ModuleExtensionSpec(c.top, c.subgroup, c.p))
        except GuardError as exc:
            res.skipped = str(exc)
            out.append(res)
            continue
        G = ext.group
        res.order = G.order
        tab = character_table(G)
        b, n = b_pi(G, c.pi), n_pi(G, c.pi)
        res.b_pi, res.n_pi = len(b), len(n)
        bs, ns = set(b), set(n)
        res.only_b = sorted(tab.index(x) for x in bs - ns)
        res.only_n = sorted(tab.index(x) for x in ns - bs)
        for N in st.normal_subgroups(G):
            rep = check_restriction_theorem(G, N, c.pi)
            res.b_restriction_violations += len(rep.b_violations)
            res.n_restriction_failures += len(rep.n_failures)
        res.forced_equal = 2 in c.pi or G.order % 2 == 1
        if res.forced_equal and (res.only_b or res.only_n):
            raise AssertionError(f"{c.name}: B_pi and N_pi differ although 2 in pi or |G| odd")
        if res.b_restriction_violations:
            raise AssertionError(f"{c.name}: a B_pi restriction left B_pi(N)")
        if progress:
            progress(c.name)
        out.append(res)
    return out
