"""Acceptance checks over the shipped corpus, one function per criterion.

Each check returns a :class:`CriterionResult`.  A theorem assertion raised
inside a check is caught and reported as a failure with its message.
"""

from __future__ import annotations

import time
from itertools import combinations
from dataclasses import dataclass, field
from typing import Callable

from . import structure as st
from .chartable import build_table, character_table, check_table_file, format_table, irr, parse_table
from .corpus import CORPUS
from .cyclotomic import lies_in_Q_pi
from .gallery import (ModuleExtensionSpec, build_section3, coset_module_extension,
                      mini_counterexample_probe, symmetric)
from .nucleus import b_pi, check_restriction_theorem, lift_summary, n_pi
from .perm import Perm
from .pitheory import (delta_sign, is_pi_special, is_pi_special_bruteforce,
                       restrict_to_pi_elements)
from .primes import PrimeSet, prime_divisors


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool = True
    checked: int = 0
    seconds: float = 0.0
    failures: list[str] = field(default_factory=list)
    findings: list[str] = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.passed = False
        self.failures.append(msg)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.title} ({self.checked} checks, {self.seconds:.1f}s)"

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures[:20],
            "findings": self.findings,
        }
        if timings:
            out["seconds"] = round(self.seconds, 2)
        return out


def corpus_pairs():
    for e in CORPUS:
        G = e.group()
        for pi in e.prime_sets():
            yield e.name, G, pi


def _timed(number: int, title: str, limit: float | None = None):
    def wrap(fn: Callable[[CriterionResult], None]):
        def run() -> CriterionResult:
            res = CriterionResult(number, title)
            t0 = time.perf_counter()
            try:
                fn(res)
            except AssertionError as exc:
                res.fail(f"assertion: {exc}")
            res.seconds = time.perf_counter() - t0
            if limit is not None and res.seconds > limit:
                res.fail(f"runtime {res.seconds:.1f}s exceeds {limit:.0f}s")
            return res
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


@_timed(1, "character tables: exact orthogonality and sum of squared degrees", limit=300)
def check_tables(res: CriterionResult) -> None:
    for e in CORPUS:
        G = e.group()
        tab = build_table(G)
        if [c.values for c in tab] != [c.values for c in character_table(G)]:
            res.fail(f"{e.name}: a fresh computation differs from the cached table")
        if sum(chi.degree ** 2 for chi in tab) != G.order:
            res.fail(f"{e.name}: sum of squared degrees")
        problems = check_table_file(parse_table(format_table(tab, e.name)))
        for p in problems:
            res.fail(f"{e.name}: {p}")
        res.checked += 1


@_timed(2, "pi-special times pi'-special products are irreducible and distinct")
def check_products(res: CriterionResult) -> None:
    for name, G, pi in corpus_pairs():
        pic = pi.complement()
        alphas = [a for a in irr(G) if is_pi_special(a, pi)]
        betas = [b for b in irr(G) if is_pi_special(b, pic)]
        seen = set()
        for a in alphas:
            for b in betas:
                chi = a * b
                if chi.norm() != 1:
                    res.fail(f"{name}, pi={pi.label()}: a product is reducible")
                if chi.values in seen:
                    res.fail(f"{name}, pi={pi.label()}: two products coincide")
                seen.add(chi.values)
                res.checked += 1


def small_prime_sets() -> list[PrimeSet]:
    """Every subset of {2, 3, 5, 7} plus the all-primes set."""
    out = [PrimeSet.of(c) for k in range(5) for c in combinations((2, 3, 5, 7), k)]
    return out + [PrimeSet.all()]


@_timed(3, "chief-series pi-special test agrees with the subnormal brute force (|G| <= 100)")
def check_special_oracle(res: CriterionResult) -> None:
    for e in CORPUS:
        G = e.group()
        if G.order > 100:
            continue
        pis = sorted(set(small_prime_sets()) | set(e.prime_sets()), key=PrimeSet.label)
        for pi in pis:
            for i, chi in enumerate(irr(G)):
                a = bool(is_pi_special(chi, pi))
                b = bool(is_pi_special_bruteforce(chi, pi))
                if a != b:
                    res.fail(f"{e.name}, pi={pi.label()}, chi[{i}]: chief series {a}, brute force {b}")
                res.checked += 1


@_timed(4, "|B_pi| = |N_pi| = |I_pi| with unique lifts in each set")
def check_lifts(res: CriterionResult) -> None:
    for name, G, pi in corpus_pairs():
        s = lift_summary(G, pi)
        tag = f"{name}, pi={pi.label()}"
        if not (s["b_pi"] == s["n_pi"] == s["i_pi"]):
            res.fail(f"{tag}: sizes {s['b_pi']}, {s['n_pi']}, {s['i_pi']}")
        if not (s["b_injective"] and s["n_injective"] and s["same_image"]):
            res.fail(f"{tag}: restriction is not a bijection onto I_pi")
        res.checked += 1


@_timed(5, "N_pi characters take values in Q_pi")
def check_rationality(res: CriterionResult) -> None:
    for name, G, pi in corpus_pairs():
        for chi in n_pi(G, pi):
            if not all(lies_in_Q_pi(v, pi) for v in chi.values):
                res.fail(f"{name}, pi={pi.label()}: {chi} has a value outside Q_pi")
            res.checked += 1


@_timed(6, "B_pi = N_pi when 2 in pi or |G| odd; Q_pi-valued lifts lie in B_pi")
def check_equality(res: CriterionResult) -> None:
    for name, G, pi in corpus_pairs():
        if not (2 in pi or G.order % 2):
            continue
        b, n = b_pi(G, pi), n_pi(G, pi)
        if set(b) != set(n):
            res.fail(f"{name}, pi={pi.label()}: B_pi differs from N_pi")
        res.checked += 1
        images = {restrict_to_pi_elements(c, pi).values for c in b}
        bset = set(b)
        for chi in irr(G):
            if restrict_to_pi_elements(chi, pi).values in images \
                    and all(lies_in_Q_pi(v, pi) for v in chi.values) and chi not in bset:
                res.fail(f"{name}, pi={pi.label()}: a Q_pi-valued lift is outside B_pi")
            res.checked += 1


@_timed(7, "constituents of B_pi restrictions to normal subgroups lie in B_pi")
def check_restriction(res: CriterionResult) -> None:
    for name, G, pi in corpus_pairs():
        for N in st.normal_subgroups(G):
            rep = check_restriction_theorem(G, N, pi)
            if rep.b_violations:
                res.fail(f"{name}, pi={pi.label()}, |N|={N.order}: {len(rep.b_violations)} violations")
            if rep.n_failures:
                res.findings.append(f"{name}, pi={pi.label()}, |N|={N.order}: "
                                    f"{len(rep.n_failures)} N_pi restrictions leave N_pi(N)")
            res.checked += 1


def sign_instances(G, pi: PrimeSet):
    """Maximal subgroups of pi-index (these have prime-power index in a solvable group)."""
    out = []
    for q in prime_divisors(G.order):
        if q in pi:
            out.extend(st.maximal_subgroups_of_prime_power_index(G, q))
    return out


@_timed(8, "sign character: delta^2 = 1, core in kernel, and the pi-special equivalence")
def check_sign(res: CriterionResult) -> None:
    for name, G, pi in corpus_pairs():
        if 2 in pi or not st.is_solvable(G):
            continue
        for H in sign_instances(G, pi):
            tag = f"{name}, pi={pi.label()}, |H|={H.order}"
            delta = delta_sign(G, H, pi)
            if not (delta * delta).is_trivial():
                res.fail(f"{tag}: delta^2 is not trivial")
            kc = set(delta.kernel_classes())
            if not set(H.classes_of(st.core(G, H).elements)) <= kc:
                res.fail(f"{tag}: core not in ker(delta)")
            for psi in irr(H):
                chi = psi.induce(G)
                if chi.norm() != 1:
                    continue
                if bool(is_pi_special(chi, pi)) != bool(is_pi_special(delta * psi, pi)):
                    res.fail(f"{tag}: equivalence fails for {psi}")
                res.checked += 1


@_timed(9, "counterexample family claim list at the Gamma level", limit=120)
def check_claims(res: CriterionResult) -> None:
    fam = build_section3("gamma")
    for claim, ok in fam.claims:
        if not ok:
            res.fail(claim)
        res.checked += 1


@_timed(10, "coset-module extension, lift pipeline on it, and the probe")
def check_extension(res: CriterionResult) -> None:
    S3 = symmetric(3)
    L = S3.subgroup([Perm.parse("(1,2)", 3)])
    pi = PrimeSet.of([3])
    ext = coset_module_extension(ModuleExtensionSpec(S3, L, 3))
    G = ext.group
    if G.order != 162:
        res.fail(f"extension has order {G.order}")
    if ext.stabilizer != ext.L or ext.stabilizer.order != 54:
        res.fail("stabilizer of theta is not E L of order 54")
    if not is_pi_special(ext.theta, pi):
        res.fail("theta is not pi-special")
    s = lift_summary(G, pi)
    if not (s["b_pi"] == s["n_pi"] == s["i_pi"] and s["same_image"]):
        res.fail(f"lift pipeline: {s}")
    res.checked += 4
    results = mini_counterexample_probe()
    done = [r for r in results if not r.skipped]
    if len(done) < 5:
        res.fail(f"probe completed only {len(done)} candidates")
    for r in done:
        res.checked += 1
        if r.finding:
            res.findings.append(f"probe {r.name}: only_b={r.only_b} only_n={r.only_n} "
                                f"n_restriction_failures={r.n_restriction_failures}")


CRITERIA = (check_tables, check_products, check_special_oracle, check_lifts, check_rationality,
            check_equality, check_restriction, check_sign, check_claims, check_extension)


def run_all(only=None, progress: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    out = []
    for i, fn in enumerate(CRITERIA, 1):
        if only and i not in only:
            continue
        r = fn()
        if progress:
            progress(r)
        out.append(r)
    return out
