"""Command-line front end.

Exit codes: 0 success, 1 a mathematical verdict came out negative, 2 bad
usage, unreadable input or an exceeded cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import constructions as cons
from .coloring import ChainCapExceeded, NotACoreCandidate, check_upho_coloring, enumerate_pre_upho_colorings, realize_core
from .io import (
    FormatError,
    coloring_to_dict,
    dumps_document,
    dumps_poset,
    dumps_report,
    emit_dot,
    read_poset,
    read_presentation,
)
from .iso import MODES, canonical_form, find_isomorphism
from .poset import (
    CoreUndetermined,
    LatticeToDepth,
    TruncatedPoset,
    char_series,
    core,
    core_stable_depth,
    lattice_certificate,
    mobius_from_bottom,
    rank_series,
    upho_check,
)
from .presentation import (
    PresentationError,
    Violation,
    WordCapExceeded,
    build_element_table,
    check_left_cancellative,
    divisibility_covers,
)

CONSTRUCT_NAMES = ("dn", "fn", "mf", "flambda", "mn", "bn", "chain", "freecomm", "shifted", "product")


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}") from None


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="inputs", action="append", default=[], metavar="PATH", help="input file (.mono or poset JSON)")
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--depth", type=int, help="truncation depth N")
    common.add_argument("--probe", type=int, help="probe rank k")
    common.add_argument("--n", type=int)
    common.add_argument("--f", type=_ints, help="function values f(1),...,f(n) as a comma list")
    common.add_argument("--lambda", dest="lam", type=_ints, help="partition parts as a comma list")
    common.add_argument("--format", choices=("summary", "structured", "dot", "mono"))
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--word-cap", type=int, help="overrides UPHOCORE_WORD_CAP")
    common.add_argument("--chain-cap", type=int, default=100_000)
    common.add_argument("--seed", type=int)
    common.add_argument("--mode", choices=MODES, default="plain", help="isomorphism flavor for iso")
    common.add_argument("--colored", action="store_true", help="use edge colors (dot, check-upho)")

    ap = argparse.ArgumentParser(prog="uphocore", description="Upho posets from homogeneous monoids.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("build", "presentation -> truncated divisibility poset"),
        ("analyze", "series, Mobius values, core and verdicts of a poset"),
        ("check-cancel", "left-cancellativity of a presentation"),
        ("check-lattice", "lattice certificate of a truncation"),
        ("check-upho", "self-similarity of filters up to the probe rank"),
        ("core", "interval below the join of the atoms"),
        ("colorings", "pre-upho colorings of a finite lattice"),
        ("realize", "candidate upho lattices with a given core"),
        ("iso", "canonical certificates and isomorphism"),
        ("dot", "Graphviz rendering"),
        ("repro", "run the acceptance suite"),
    ]:
        sub.add_parser(name, parents=[common], help=help_)
    c = sub.add_parser("construct", parents=[common], help="named posets and monoids")
    c.add_argument("name", choices=CONSTRUCT_NAMES)
    return ap


# --- helpers ----------------------------------------------------------------------


def _need(args, field: str, flag: str):
    value = getattr(args, field)
    if value is None:
        raise UsageError(f"{args.command} needs {flag}")
    return value


def _one_input(args) -> str:
    if len(args.inputs) != 1:
        raise UsageError(f"{args.command} takes exactly one --in")
    return args.inputs[0]


def _load(path: str, args) -> TruncatedPoset:
    if not Path(path).exists():
        raise UsageError(f"cannot read {path}: no such file")
    if path.endswith(".mono"):
        p = read_presentation(path)
        depth = _need(args, "depth", "--depth for a .mono input")
        return divisibility_covers(p, build_element_table(p, depth, args.word_cap))
    return read_poset(path)


def _emit(text: str, args):
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _poset_out(P: TruncatedPoset, args):
    if args.format == "dot":
        _emit(emit_dot(P, colored=args.colored and P.colored), args)
    else:
        _emit(dumps_poset(P), args)


def _describe(P: TruncatedPoset, verdict) -> str:
    parts = []
    for field in ("x", "y"):
        if hasattr(verdict, field):
            parts.append(P.label(getattr(verdict, field)))
    for field in ("bounds",):
        if hasattr(verdict, field):
            parts.append("{" + ", ".join(P.label(v) for v in getattr(verdict, field)) + "}")
    if not parts:
        return str(verdict)
    return f"{type(verdict).__name__}({', '.join(parts)})"


# --- subcommands -----------------------------------------------------------------


def cmd_build(args) -> int:
    path = _one_input(args)
    if not path.endswith(".mono"):
        raise UsageError("build expects a .mono presentation")
    _poset_out(_load(path, args), args)
    return 0


def _analysis(P: TruncatedPoset) -> dict:
    rs, cs = rank_series(P), char_series(P)
    doc = {
        "depth": P.depth,
        "rank_sizes": P.rank_sizes(),
        "rank_series": list(rs.coeffs),
        "char_series": list(cs.coeffs),
        "product": list((rs * cs).coeffs),
        "mobius": mobius_from_bottom(P),
        "lattice": _describe(P, lattice_certificate(P)),
    }
    try:
        C = core(P)
        doc["core_rank_sizes"] = C.rank_sizes()
        doc["core_char_poly"] = list(char_series(C).coeffs)
        doc["core_stable_depth"] = core_stable_depth(P)
    except CoreUndetermined as exc:
        doc["core_rank_sizes"] = None
        doc["core_note"] = str(exc)
    return doc


def cmd_analyze(args) -> int:
    P = _load(_one_input(args), args)
    doc = _analysis(P)
    if args.format == "structured":
        _emit(dumps_document(doc), args)
        return 0
    rs, cs = rank_series(P), char_series(P)
    lines = [
        f"depth            {P.depth}",
        f"rank sizes       {doc['rank_sizes']}",
        f"rank series      {rs}",
        f"char series      {cs}",
        f"product          {rs * cs}",
        f"lattice          {doc['lattice']}",
    ]
    if doc["core_rank_sizes"] is not None:
        lines.append(f"core rank sizes  {doc['core_rank_sizes']} (stable from depth {doc['core_stable_depth']})")
    else:
        lines.append(f"core             undetermined: {doc['core_note']}")
    _emit("\n".join(lines) + "\n", args)
    return 0


def cmd_check_cancel(args) -> int:
    path = _one_input(args)
    if not path.endswith(".mono"):
        raise UsageError("check-cancel expects a .mono presentation")
    p = read_presentation(path)
    depth = _need(args, "depth", "--depth")
    v = check_left_cancellative(p, build_element_table(p, depth, args.word_cap))
    _emit((v.describe(p) if isinstance(v, Violation) else str(v)) + "\n", args)
    return 1 if isinstance(v, Violation) else 0


def cmd_check_lattice(args) -> int:
    P = _load(_one_input(args), args)
    v = lattice_certificate(P)
    _emit(_describe(P, v) + ("" if v.conclusive else " (inconclusive)") + "\n", args)
    return 0 if isinstance(v, LatticeToDepth) else 1


def cmd_check_upho(args) -> int:
    P = _load(_one_input(args), args)
    k = args.probe if args.probe is not None else min(2, P.depth)
    if k > P.depth:
        raise UsageError("--probe may not exceed the depth")
    v = check_upho_coloring(P, k=k) if args.colored else upho_check(P, k)
    if v.ok:
        _emit(f"Pass (probe {k})\n", args)
        return 0
    _emit(f"Fail at {P.label(v.node)}\n", args)
    return 1


def cmd_core(args) -> int:
    P = _load(_one_input(args), args)
    try:
        C = core(P)
    except CoreUndetermined as exc:
        print(f"core undetermined: {exc}", file=sys.stderr)
        return 1
    _poset_out(C, args)
    return 0


def cmd_colorings(args) -> int:
    L = _load(_one_input(args), args)
    cs = enumerate_pre_upho_colorings(L.uncolored() if L.colored else L)
    if args.format == "structured":
        _emit(dumps_document({"count": len(cs), "colorings": [coloring_to_dict(c) for c in cs]}), args)
    else:
        lines = [f"{len(cs)} pre-upho colorings"]
        for i, c in enumerate(cs):
            free = ", ".join(f"{L.label(a)}<{L.label(b)}:{L.label(x)}" for (a, b), x in c.items() if a != L.bottom)
            lines.append(f"  #{i}: {free or '(all edges forced)'}")
        _emit("\n".join(lines) + "\n", args)
    return 0


def cmd_realize(args) -> int:
    path = _one_input(args)
    L = _load(path, args)
    if path.endswith(".mono"):
        raise UsageError("realize expects a finite lattice as a poset file")
    depth = _need(args, "depth", "--depth")
    probe = args.probe if args.probe is not None else 2
    report = realize_core(L, depth, probe, workers=max(1, args.workers), chain_cap=args.chain_cap, word_cap=args.word_cap, name=Path(path).stem)
    if args.format == "structured":
        _emit(dumps_report(report, L), args)
        return 0
    lines = [
        f"lattice            {report.lattice_name} ({L.n} elements, rank {L.depth})",
        f"depth / probe      {report.depth} / {report.probe}",
        f"colorings          {report.colorings_enumerated}",
        f"distinct at depth  {report.distinct_at_depth}",
        f"undecided          {len(report.undecided)}",
        f"rejected           {len(report.rejected)}",
        f"wall time          {report.wall_time:.2f}s",
        "",
    ]
    for i, s in enumerate(report.survivors):
        rels = "; ".join(s.presentation.to_text().strip().splitlines()[1:])
        lines.append(f"  survivor {i}: colorings {s.colorings}  {rels}")
    lines.append("")
    lines.append(report.caveat)
    _emit("\n".join(lines) + "\n", args)
    return 0


def cmd_iso(args) -> int:
    if not 1 <= len(args.inputs) <= 2:
        raise UsageError("iso takes one or two --in paths")
    posets = [_load(p, args) for p in args.inputs]
    mode = args.mode
    if mode == "plain":
        posets = [P.uncolored() if P.colored else P for P in posets]
    lines = [f"{canonical_form(P, mode).hex()}  {path}" for P, path in zip(posets, args.inputs)]
    code = 0
    if len(posets) == 2:
        phi = find_isomorphism(posets[0], posets[1], mode)
        lines.append("isomorphic" if phi is not None else "not isomorphic")
        if phi is not None:
            lines.append("map " + " ".join(f"{v}->{w}" for v, w in enumerate(phi)))
        code = 0 if phi is not None else 1
    _emit("\n".join(lines) + "\n", args)
    return code


def cmd_construct(args) -> int:
    name = args.name
    pres = None
    if name in ("dn", "fn"):
        n, depth = _need(args, "n", "--n"), _need(args, "depth", "--depth")
        P = (cons.build_Dn if name == "dn" else cons.build_Fn)(n, depth)
    elif name in ("mf", "flambda"):
        if name == "mf":
            f = cons.FiberFunction(_need(args, "f", "--f"))
        else:
            f = cons.fiber_function_of_partition(cons.Partition(_need(args, "lam", "--lambda")))
        pres = cons.monoid_Mf(f)
    elif name in ("freecomm", "shifted"):
        n = _need(args, "n", "--n")
        pres = (cons.monoid_free_commutative if name == "freecomm" else cons.monoid_shifted)(n)
    elif name == "mn":
        P = cons.build_Mn(_need(args, "n", "--n"))
    elif name == "bn":
        P = cons.build_Bn(_need(args, "n", "--n"))
    elif name == "chain":
        P = cons.build_chain(_need(args, "depth", "--depth"))
    else:
        if len(args.inputs) != 2:
            raise UsageError("construct product takes two --in paths")
        P = cons.product(*(_load(p, args) for p in args.inputs))
    if pres is not None:
        if args.format == "mono":
            _emit(pres.to_text(), args)
            return 0
        P = divisibility_covers(pres, build_element_table(pres, _need(args, "depth", "--depth"), args.word_cap))
    elif args.format == "mono":
        raise UsageError(f"{name} is a poset, not a presentation")
    _poset_out(P, args)
    return 0


def cmd_dot(args) -> int:
    P = _load(_one_input(args), args)
    _emit(emit_dot(P, colored=args.colored and P.colored), args)
    return 0


def cmd_repro(args) -> int:
    from .repro import DEFAULT_SEED, run_all

    seed = args.seed if args.seed is not None else DEFAULT_SEED
    lines: list[str] = []

    def echo(line):
        print(line, flush=True)
        lines.append(line)

    results = run_all(seed, workers=max(1, args.workers), echo=echo)
    passed = sum(r.passed for r in results)
    echo(f"{passed}/{len(results)} criteria passed")
    if args.out:
        Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return 0 if passed == len(results) else 1


COMMANDS = {
    "build": cmd_build,
    "analyze": cmd_analyze,
    "check-cancel": cmd_check_cancel,
    "check-lattice": cmd_check_lattice,
    "check-upho": cmd_check_upho,
    "core": cmd_core,
    "colorings": cmd_colorings,
    "realize": cmd_realize,
    "iso": cmd_iso,
    "construct": cmd_construct,
    "dot": cmd_dot,
    "repro": cmd_repro,
}


def run(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.depth is not None and args.depth < 0:
        print("error: --depth must be non-negative", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except (UsageError, FormatError, PresentationError, NotACoreCandidate) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (WordCapExceeded, ChainCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON: {exc}", file=sys.stderr)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
