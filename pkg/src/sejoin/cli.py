"""``sejoin`` command line.

Exit codes: 0 success, 1 parse error, 2 invariant violation in the inputs
(or a failed ``verify``), 3 indeterminate result under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .catalog import format_record, load_catalog
from .errors import InvariantViolation, ParseError, SejoinError
from .lattice import cheeger_limit, lattice_point, scaling_solution
from .parser import parse_atom, parse_expr
from .regression import run_checks
from .report import build_report, render_report, render_rows
from .search import (
    cor418_triples,
    odd_order_triples,
    regular5_status,
    smooth_sphere_join_predicate,
)
from .validators import validate_space

EXIT_PARSE = 1
EXIT_INVARIANT = 2
EXIT_INDETERMINATE = 3


class Indeterminate(Exception):
    pass


def _emit(text: str) -> None:
    sys.stdout.write(text.rstrip("\n") + "\n")


def _box(text: str) -> tuple[int, int]:
    try:
        l, k = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LxK, got {text!r}") from None
    if l < 1 or k < 1:
        raise argparse.ArgumentTypeError("box sides must be positive")
    return l, k


def cmd_eval(args, catalog) -> int:
    outputs = []
    indeterminate = False
    for text in args.expr:
        report = build_report(text, parse_expr(text, catalog))
        indeterminate |= report.indeterminate
        outputs.append(report)
    if args.format == "json":
        data = [r.to_dict() for r in outputs]
        _emit(json.dumps(data[0] if len(data) == 1 else data, indent=2))
    else:
        _emit("\n\n".join(render_report(r, args.format) for r in outputs))
    if args.strict and indeterminate:
        raise Indeterminate("smoothness is indeterminate")
    return 0


def cmd_lattice(args, catalog) -> int:
    s1 = parse_atom(args.s1, catalog)
    s2 = parse_atom(args.s2, catalog)
    lmax, kmax = args.box
    rows = []
    for l in range(0 if args.boundary else 1, lmax + 1):
        for k in range(0 if args.boundary else 1, kmax + 1):
            if l == 0 and k == 0:
                continue
            p = lattice_point(s1, s2, l, k)
            if args.smooth_only and p.smooth is not True:
                continue
            cohomology = p.rational_cohomology
            rows.append((l, k, p.smooth, p.orb_simply_connected, p.sasakian_einstein,
                         getattr(cohomology, "ranks", None) or str(cohomology)))
    columns = ("l", "k", "smooth", "orb_simply_connected", "sasakian_einstein", "rational_cohomology")
    meta = {"command": "lattice", "s1": s1.name, "s2": s2.name, "box": [lmax, kmax]}
    _emit(render_rows(columns, rows, args.format, meta))
    if args.strict and any(r[2] is None for r in rows):
        raise Indeterminate("some lattice points have undecided smoothness")
    return 0


def cmd_limit(args, catalog) -> int:
    s1 = parse_atom(args.s1, catalog)
    s2 = parse_atom(args.s2, catalog)
    point, sequence = cheeger_limit(s1, s2, args.l, args.k, args.a, args.b)
    rows = [(sequence, point.l, point.k, point.smooth, point.sasakian_einstein)]
    _emit(render_rows(("sequence", "l", "k", "smooth", "sasakian_einstein"), rows, args.format,
                      {"command": "limit"}))
    return 0


def cmd_search(args, catalog) -> int:
    fmt = args.format
    if args.query == "cor418":
        result = cor418_triples(args.rmax)
        rows = [(*h.params, h.data["order"], "smooth") for h in result.hits]
        _emit(render_rows(("p1", "p2", "p3", "order", "Sk(l) joins"), rows, fmt,
                          {"command": "search cor418", "bound": result.bound}))
    elif args.query == "odd-order":
        result = odd_order_triples(args.pmax)
        rows = [(*h.params, h.data["order"], h.data["all_1_mod_4"]) for h in result.hits]
        _emit(render_rows(("p1", "p2", "p3", "order", "all_1_mod_4"), rows, fmt,
                          {"command": "search odd-order", "bound": result.bound}))
    elif args.query == "regular5":
        rows = []
        for k in range(args.kmax + 1):
            st = regular5_status(k)
            rows.append((k, st.status.value, st.dim_lower, st.example))
        _emit(render_rows(("k", "status", "dim_lower", "example"), rows, fmt, {"command": "search regular5"}))
    else:
        s = parse_atom(args.space, catalog)
        rows = [(m, smooth_sphere_join_predicate(m, s).value) for m in range(1, args.mmax + 1)]
        _emit(render_rows(("m", "verdict"), rows, fmt, {"command": "search sphere-join", "space": s.name}))
        if args.strict and any(r[1] == "indeterminate" for r in rows):
            raise Indeterminate("some sphere joins are indeterminate")
    return 0


def cmd_scaling(args, catalog) -> int:
    sol = scaling_solution(args.n1, args.n2)
    rows = [(sol.n1, sol.n2, str(sol.c1), str(sol.c2), str(sol.scalar_curvature), str(sol.einstein_constant))]
    _emit(render_rows(("n1", "n2", "c1", "c2", "scalar_curvature", "einstein_constant"), rows, args.format,
                      {"command": "scaling"}))
    return 0


def cmd_verify(args, catalog) -> int:
    checks = run_checks(catalog)
    failed = [c for c in checks if not c.ok]
    rows = [(c.name, "ok" if c.ok else "FAIL", "" if c.ok else f"expected {c.expected}, found {c.found}")
            for c in (checks if args.all else failed)]
    if rows:
        _emit(render_rows(("check", "status", "detail"), rows, args.format, {"command": "verify"}))
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed", file=sys.stderr)
    return EXIT_INVARIANT if failed else 0


def cmd_catalog(args, catalog) -> int:
    if args.format == "records":
        _emit("\n".join(format_record(s) for s in catalog.values()))
        return 0
    rows = []
    for s in catalog.values():
        rows.append((s.name, s.family, s.dim, s.index, s.order, s.smooth, s.betti.ranks,
                     len(validate_space(s))))
    _emit(render_rows(("name", "family", "dim", "index", "order", "smooth", "betti", "violations"),
                      rows, args.format, {"command": "catalog"}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    base = argparse.ArgumentParser(add_help=False)
    base.add_argument("--strict", action="store_true", help="exit 3 when a result is indeterminate")
    base.add_argument("--catalog", help="catalog file (default: $SEJOIN_CATALOG or the shipped one)")

    common = argparse.ArgumentParser(add_help=False, parents=[base])
    common.add_argument("--format", choices=("table", "json", "tsv"), default="table")

    parser = argparse.ArgumentParser(prog="sejoin", description="Join calculus on Sasakian-Einstein spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="invariants of join expressions")
    p.add_argument("expr", nargs="+", help='e.g. "S3 * T(1,2,3)"')
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("lattice", parents=[common], help="points M(S1, S2; l, k) in a box")
    p.add_argument("s1")
    p.add_argument("s2")
    p.add_argument("--box", type=_box, default=(5, 5), metavar="LxK")
    p.add_argument("--smooth-only", action="store_true")
    p.add_argument("--boundary", action="store_true", help="include the l = 0 and k = 0 edges")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("limit", parents=[common], help="limit of M(S1, S2; l t + a, k t + b)")
    p.add_argument("s1")
    p.add_argument("s2")
    for name in ("l", "k", "a", "b"):
        p.add_argument(name, type=int)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("search", parents=[common], help="enumerations")
    p.add_argument("query", choices=("cor418", "odd-order", "regular5", "sphere-join"))
    p.add_argument("space", nargs="?", help="the 7-dimensional index-2 space for sphere-join")
    p.add_argument("--rmax", type=int, default=5)
    p.add_argument("--pmax", type=int, default=15)
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--mmax", type=int, default=12)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("scaling", parents=[common], help="rescaling making a product Einstein")
    p.add_argument("n1", type=int)
    p.add_argument("n2", type=int)
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("verify", parents=[common], help="validators and known values over the catalog")
    p.add_argument("--all", action="store_true", help="list passing checks too")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", parents=[base], help="list the catalog")
    p.add_argument("--format", choices=("table", "json", "tsv", "records"), default="table")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "search" and args.query == "sphere-join" and not args.space:
        print("sejoin: search sphere-join needs a space", file=sys.stderr)
        return EXIT_PARSE
    try:
        catalog = load_catalog(args.catalog)
        return args.func(args, catalog)
    except ParseError as exc:
        print(f"sejoin: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantViolation as exc:
        print(f"sejoin: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except Indeterminate as exc:
        print(f"sejoin: indeterminate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except SejoinError as exc:
        print(f"sejoin: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
