"""Command-line front end.

Exit codes: 0 all checks passed, 1 a theorem assertion failed, 2 bad input or
a size guard refused the job, 3 a finding (a soft check diverged).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .chartable import character_table, format_table
from .config import GUARDS, GuardError, check_order
from .corpus import CORPUS, corpus_hashes
from .perm import parse_group_file
from .permgroup import PermGroup
from .primes import PrimeSet

EXIT_OK, EXIT_ASSERT, EXIT_INPUT, EXIT_FINDING = 0, 1, 2, 3


class InputError(ValueError):
    pass


def load_group(spec: str) -> tuple[PermGroup, str, str]:
    """A group file path, or the name or file name of a corpus entry."""
    path = Path(spec)
    if path.is_file():
        text = path.read_text()
        name = path.stem
    else:
        for e in CORPUS:
            if spec in (e.name, e.file, Path(e.file).stem):
                text, name = e.text(), e.name
                break
        else:
            raise InputError(f"no group file or corpus entry named {spec!r}")
    try:
        degree, gens = parse_group_file(text)
    except ValueError as exc:
        raise InputError(f"{spec}: {exc}") from exc
    G = PermGroup(degree, gens, name)
    check_order(G.order, name)
    return G.interned(), name, hashlib.sha256(text.encode()).hexdigest()


def _pi(args) -> PrimeSet:
    if args.pi is None:
        raise InputError("--pi is required")
    try:
        return PrimeSet.parse(args.pi)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _values(chi) -> list[str]:
    return [str(v) for v in chi.values]


def _group_block(G: PermGroup, name: str, digest: str) -> dict:
    return {"name": name, "order": G.order, "degree": G.degree, "sha256": digest,
            "classes": len(G.classes)}


# --- commands ----------------------------------------------------------------


def cmd_table(args) -> tuple[dict, int]:
    G, name, digest = load_group(args.group)
    tab = character_table(G)
    cd = G.classes
    return {
        "group": _group_block(G, name, digest),
        "classes": [{"rep": r.to_cycle_string(), "size": s, "order": o}
                    for r, s, o in zip(cd.reps, cd.sizes, cd.orders)],
        "characters": [{"id": i, "degree": chi.degree, "values": _values(chi)}
                       for i, chi in enumerate(tab)],
        "table_text": format_table(tab, name),
    }, EXIT_OK


def cmd_pispecial(args) -> tuple[dict, int]:
    from .pitheory import is_pi_special
    G, name, digest = load_group(args.group)
    pi = _pi(args)
    entries = []
    for i, chi in enumerate(character_table(G)):
        v = is_pi_special(chi, pi)
        w = None
        if not v:
            w = {"reason": v.reason, "subgroup_order": v.witness_order,
                 "determinant_order": v.witness_det_order}
        entries.append({"id": i, "pi": pi.label(), "verdict": v.special, "witness": w})
    return {"group": _group_block(G, name, digest), "pi": pi.label(), "characters": entries}, EXIT_OK


def _lift_set(args, which: str) -> tuple[dict, int]:
    from .nucleus import b_pi, n_pi
    G, name, digest = load_group(args.group)
    pi = _pi(args)
    tab = character_table(G)
    members = (b_pi if which == "b_pi" else n_pi)(G, pi, fast=args.fast)
    return {
        "group": _group_block(G, name, digest),
        "pi": pi.label(),
        "set": which,
        "size": len(members),
        "members": [{"id": tab.index(chi), "degree": chi.degree, "values": _values(chi)}
                    for chi in members],
    }, EXIT_OK


def cmd_bpi(args):
    return _lift_set(args, "b_pi")


def cmd_npi(args):
    return _lift_set(args, "n_pi")


def cmd_ipi(args) -> tuple[dict, int]:
    from .pitheory import i_pi, pi_classes
    G, name, digest = load_group(args.group)
    pi = _pi(args)
    tab = character_table(G)
    pc = pi_classes(G, pi)
    cd = G.classes
    return {
        "group": _group_block(G, name, digest),
        "pi": pi.label(),
        "pi_classes": [cd.reps[i].to_cycle_string() for i in pc.classes],
        "partial_characters": [{"lift_id": tab.index(phi.provenance[0]), "values": [str(v) for v in phi.values]}
                               for phi in i_pi(G, pi)],
    }, EXIT_OK


def cmd_nucleus(args) -> tuple[dict, int]:
    from .nucleus import nucleus
    G, name, digest = load_group(args.group)
    pi = _pi(args)
    tab = character_table(G)
    ids = range(len(tab)) if args.char is None else [args.char]
    out = []
    for i in ids:
        if not 0 <= i < len(tab):
            raise InputError(f"--char {i} out of range 0..{len(tab) - 1}")
        cert = nucleus(G, tab[i], pi, args.mode, fast=args.fast)
        d = cert.to_dict()
        d["id"] = i
        out.append(d)
    code = EXIT_FINDING if any(c.get("notes") for c in out) else EXIT_OK
    return {"group": _group_block(G, name, digest), "pi": pi.label(), "mode": args.mode,
            "certificates": out}, code


def cmd_section3(args) -> tuple[dict, int]:
    from . import gallery
    from .verify import check_extension
    fam = gallery.build_section3(args.scale)
    report = {
        "scale": args.scale,
        "claims": [{"claim": c, "passed": ok} for c, ok in fam.claims],
        "full_scale": {**gallery.full_scale_size(), "built": False},
    }
    code = EXIT_OK
    if not args.no_probe:
        if args.candidates:
            path = Path(args.candidates)
            try:
                cands = gallery.parse_candidates(path.read_text(), path.parent)
            except (OSError, gallery.SpecError) as exc:
                raise InputError(str(exc)) from exc
        else:
            cands = gallery.default_candidates()
            if args.extended:
                cands += gallery.extended_candidates()
        ext = check_extension()
        results = gallery.mini_counterexample_probe(cands)
        report["extension"] = ext.as_dict()
        report["probe"] = [r.as_dict() for r in results]
        if not ext.passed:
            raise AssertionError("; ".join(ext.failures))
        if any(r.finding for r in results):
            code = EXIT_FINDING
    return report, code


def cmd_verify(args) -> tuple[dict, int]:
    from .verify import run_all
    only = set(args.only) if args.only else None
    results = run_all(only, progress=lambda r: print(r.line(), file=sys.stderr))
    report = {"criteria": [r.as_dict() for r in results], "passed": all(r.passed for r in results)}
    if not report["passed"]:
        return report, EXIT_ASSERT
    return report, EXIT_FINDING if any(r.findings for r in results) else EXIT_OK


COMMANDS = {
    "table": (cmd_table, "character table of a group"),
    "pispecial": (cmd_pispecial, "pi-special verdict for every irreducible character"),
    "bpi": (cmd_bpi, "members of B_pi (subnormal nucleus)"),
    "npi": (cmd_npi, "members of N_pi (normal nucleus and vertex)"),
    "ipi": (cmd_ipi, "the pi-partial characters"),
    "nucleus": (cmd_nucleus, "nucleus certificates"),
    "section3": (cmd_section3, "counterexample family claims, module extension and probe"),
    "verify": (cmd_verify, "run the acceptance suite over the shipped corpus"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pilift", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"pilift {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--guard-order", type=int, help="largest group order accepted")
        if name in ("table", "pispecial", "bpi", "npi", "ipi", "nucleus"):
            p.add_argument("--group", required=True, help="group file or corpus name")
        if name in ("pispecial", "bpi", "npi", "ipi", "nucleus"):
            p.add_argument("--pi", required=True, help="prime set: '2,3', 'all', 'none' or '^2'")
        if name in ("bpi", "npi", "nucleus"):
            p.add_argument("--fast", action="store_true", help="skip uniqueness assertions")
        if name == "nucleus":
            p.add_argument("--mode", choices=["normal", "subnormal"], default="normal")
            p.add_argument("--char", type=int, help="character index (default: all)")
        if name == "section3":
            p.add_argument("--scale", choices=["gamma", "mini"], default="gamma")
            p.add_argument("--candidates", help="probe candidate file")
            p.add_argument("--extended", action="store_true", help="add the slower probe candidates")
            p.add_argument("--no-probe", action="store_true")
        if name == "verify":
            p.add_argument("--only", type=int, nargs="+", help="criterion numbers to run")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    saved = GUARDS.order
    if args.guard_order is not None:
        GUARDS.order = args.guard_order
    try:
        return _run(args)
    finally:
        GUARDS.order = saved


def _run(args) -> int:
    fn = COMMANDS[args.command][0]
    from .gallery import ConstructionError, SpecError
    from .pitheory import PreconditionError
    from .structure import NoHallSubgroup
    try:
        report, code = fn(args)
    except (InputError, GuardError, PreconditionError, SpecError, NoHallSubgroup) as exc:
        print(f"pilift: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (AssertionError, ConstructionError, ArithmeticError) as exc:
        print(f"pilift: assertion failed: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    doc = {
        "command": args.command,
        "version": __version__,
        "exit_code": code,
        "guards": GUARDS.as_dict(),
        "corpus_sha256": corpus_hashes(),
        **report,
    }
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
