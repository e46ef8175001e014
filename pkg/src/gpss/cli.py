"""Command line front end: ``gpss gen | analyze | solve | bench | compare``.

Exit codes: 0 success, 1 usage or invalid parameters, 2 unreadable or
malformed input, 3 solver precondition failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import GPSSError, ParseError, PreconditionError
from .generators import FAMILIES
from .harness import (
    ALGORITHMS,
    aggregates_to_csv,
    fit_constant,
    make_instance,
    run_bench,
    solve,
)
from .io import emit_instance, emit_points, read_instance
from .structure import (
    arrangement_vertices,
    collinear_triples,
    density_report,
    greedy_line_cover,
    is_alpha_dense,
    max_collinear,
)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_SOLVER = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    return value


def seed64(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer seed: {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gpss", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="write a generated instance")
    gen.add_argument("family", choices=sorted(FAMILIES))
    gen.add_argument("--m", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--p", type=int)
    gen.add_argument("--i", type=int)
    gen.add_argument("--alpha", type=rational)
    gen.add_argument("--keep", type=rational)
    gen.add_argument("--range", type=int)
    gen.add_argument("--seed", type=seed64)
    gen.add_argument("--out", help="output file (default: stdout)")

    analyze = sub.add_parser("analyze", help="report structural quantities of an instance")
    analyze.add_argument("path")
    analyze.add_argument("--alpha", type=rational, action="append", default=[],
                         help="density threshold to test (repeatable)")
    analyze.add_argument("--genericity-c", type=rational, default=Fraction(1, 10))

    def solver_flags(p):
        p.add_argument("--alpha", type=rational)
        p.add_argument("--seed", type=seed64, default=0)
        p.add_argument("--trials", type=int)
        p.add_argument("--c-prime", type=rational)
        p.add_argument("--genericity-c", type=rational, default=Fraction(1, 10))
        p.add_argument("--node-budget", type=int)
        p.add_argument("--order", choices=("input", "shuffle"))

    solve_p = sub.add_parser("solve", help="run one algorithm on an instance")
    solve_p.add_argument("path")
    solve_p.add_argument("--alg", required=True, choices=list(ALGORITHMS))
    solver_flags(solve_p)
    solve_p.add_argument("--out", help="write the chosen points here")
    solve_p.add_argument("--record", help="append the JSON record to this file")

    bench = sub.add_parser("bench", help="run a JSON sweep specification")
    bench.add_argument("sweep")
    bench.add_argument("--out", required=True, help="aggregate CSV table")
    bench.add_argument("--records", help="per-run JSON lines (default: OUT with .jsonl)")

    compare = sub.add_parser("compare", help="run several algorithms on one instance")
    compare.add_argument("path")
    compare.add_argument("--algs", default=None,
                         help="comma-separated algorithms (default: all that fit the instance)")
    solver_flags(compare)
    compare.add_argument("--out", help="write the comparison CSV here instead of stdout")
    return parser


def _solver_params(args) -> dict:
    params = {}
    for name in ("alpha", "trials", "c_prime", "genericity_c", "node_budget", "order"):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    return params


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    params = {k: getattr(args, k) for k in ("m", "n", "p", "i", "alpha", "keep", "range", "seed")
              if getattr(args, k) is not None}
    for key in ("alpha", "keep"):
        if key in params:
            params[key] = str(params[key])
    try:
        inst = make_instance(args.family, params)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid parameters for {args.family}: {exc}") from None
    _emit(emit_instance(inst), args.out)
    print(f"{args.family}: n={inst.n} ({inst.kind})", file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def analyze_instance(inst, alphas=(), genericity_c=Fraction(1, 10)) -> dict:
    report = {"kind": inst.kind, "family": inst.family, "n": inst.n}
    if inst.kind == "points":
        pts = inst.points
        if len(pts) >= 2:
            dens = density_report(pts)
            cover = greedy_line_cover(pts)
            report.update(
                max_collinear=max_collinear(pts),
                collinear_triples=collinear_triples(pts),
                min_sq=str(dens.min_sq),
                max_sq=str(dens.max_sq),
                spread_sq=str(dens.spread_sq),
                alpha_dense={str(a): is_alpha_dense(pts, a) for a in alphas},
                cover_size=cover.size,
                opt_upper_bound=cover.opt_bound,
            )
        return report
    lines = inst.lines
    vertices = arrangement_vertices(lines)
    n, big_n = len(lines), len(vertices)
    ell = max_collinear(vertices) if big_n >= 2 else None
    report.update(
        vertices=big_n,
        max_collinear_vertices=ell,
        max_collinear_bound=n - 1,
        max_collinear_bound_holds=None if ell is None else ell <= n - 1,
        genericity_c=str(genericity_c),
        generic=bool(n >= 2 and big_n >= genericity_c * n * n),
        vertex_density=(big_n / (n * n)) if n else None,
    )
    return report


def cmd_analyze(args) -> int:
    inst = read_instance(args.path)
    print(json.dumps(analyze_instance(inst, args.alpha, args.genericity_c)))
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = read_instance(args.path)
    result, record = solve(inst, args.alg, _solver_params(args), args.seed)
    if args.out:
        Path(args.out).write_text(emit_points(result.chosen, "solution",
                                              {"alg": args.alg, "seed": args.seed}))
    line = record.to_json()
    if args.record:
        with open(args.record, "a") as fh:
            fh.write(line + "\n")
    print(line)
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        spec = json.loads(Path(args.sweep).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"sweep file is not JSON: {exc.msg}", exc.lineno, args.sweep) from None
    rows, aggregates = run_bench(spec)
    Path(args.out).write_text(aggregates_to_csv(aggregates))
    records = args.records or str(Path(args.out).with_suffix(".jsonl"))
    Path(records).write_text("".join(json.dumps(r, separators=(",", ":")) + "\n" for r in rows))
    print(f"{len(rows)} records, {len(aggregates)} aggregate rows -> {args.out}")
    return EXIT_OK


def cmd_compare(args) -> int:
    inst = read_instance(args.path)
    if args.algs:
        algs = [a.strip() for a in args.algs.split(",") if a.strip()]
        unknown = [a for a in algs if a not in ALGORITHMS]
        if unknown:
            raise UsageError(f"unknown algorithms: {', '.join(unknown)}")
    else:
        algs = [a for a, kind in ALGORITHMS.items() if kind == inst.kind and a != "exact"]
    params = _solver_params(args)
    records = [solve(inst, alg, params, args.seed)[1] for alg in algs]
    opt = next((r.opt for r in records if r.opt is not None), None)
    header = "alg,size,bound,bound_source,ratio_lb,true_ratio,fit,fit_value"
    rows = [header]
    for r in records:
        r.opt = r.opt if r.opt is not None else opt
        fit, value = fit_constant(r.alg, r)
        true = "" if r.true_ratio is None else f"{float(r.true_ratio):.6g}"
        rows.append(f"{r.alg},{r.size},{r.bound},{r.bound_source},{r.ratio_lb},{true},"
                    f"{fit},{'' if value is None else f'{value:.6g}'}")
    for r in records:
        print(r.to_json())
    _emit("\n".join(rows) + "\n", args.out)
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "analyze": cmd_analyze, "solve": cmd_solve,
            "bench": cmd_bench, "compare": cmd_compare}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"gpss: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"gpss: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, GPSSError) as exc:
        print(f"gpss: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except AssertionError as exc:
        print(f"gpss: verification failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
