"""``lielab`` command line.

Exit codes: 0 success or pass, 1 check failure (or failing suite), 2 solver
round cap reached, 64 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .algebra import AlgebraError, center
from .conditions import FAMILIES, ConditionSpec, Kind, MaxRoundsExceeded, SolveConfig, check_map, pn_span, solve_space
from .io import FormatError, check_report, dumps, load_algebra, load_map, solve_report, span_report
from .scalar import format_scalar
from .suite import EXAMPLE_IDS, example, full_report, run_example

EXIT_OK, EXIT_FAIL, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 64
DEFAULT_SEED = 0xC0FFEE
CONDITIONS = tuple(k.value for k in Kind)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=_seed, help="random seed (default: $LIELAB_SEED or 0xC0FFEE)")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--batch", type=int, help="tuples per sampling round")
    p.add_argument("--stable", type=int, help="unchanged rounds required to stop")
    p.add_argument("--verify", type=int, help="fresh tuples used for verification")
    p.add_argument("--bound", type=int, help="random coordinates are drawn from [-bound, bound]")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lielab", description="Exact checks of Lie n-centralizer conditions on finite-dimensional algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    alg = sub.add_parser("algebra", help="inspect an algebra")
    alg_sub = alg.add_subparsers(dest="action", required=True, parser_class=_Parser)
    info = alg_sub.add_parser("info", help="dimension, unit, centre and basis labels")
    info.add_argument("ref", help="JSON file or built-in name such as builtin:M2")
    info.add_argument("--json", action="store_true", help="print the summary as JSON")

    solve = sub.add_parser("solve", help="solution space of a condition")
    solve.add_argument("ref")
    solve.add_argument("--condition", required=True, choices=CONDITIONS)
    solve.add_argument("--n", type=int, default=2)
    _common(solve)

    check = sub.add_parser("check", help="check one map against a condition")
    check.add_argument("ref")
    check.add_argument("map", help="map JSON file")
    check.add_argument("--condition", required=True, choices=CONDITIONS)
    check.add_argument("--n", type=int, default=2)
    _common(check)

    ex = sub.add_parser("example", help="run a worked example ('list', 'all' or an id)")
    ex.add_argument("id")
    _common(ex)

    suite = sub.add_parser("suite", help="run every example and scenario")
    _common(suite)

    span = sub.add_parser("span", help="span of p_n over a family of tuples")
    span.add_argument("ref")
    span.add_argument("--n", type=int, default=2)
    span.add_argument("--family", default="all", choices=FAMILIES)
    _common(span)
    return parser


def make_config(args, env=None) -> SolveConfig:
    """Flags beat ``LIELAB_SEED``, which beats the defaults."""
    env = os.environ if env is None else env
    seed = args.seed
    if seed is None and env.get("LIELAB_SEED"):
        try:
            seed = int(env["LIELAB_SEED"], 0)
        except ValueError:
            raise UsageError(f"LIELAB_SEED is not an integer: {env['LIELAB_SEED']!r}") from None
    kw = {"seed": DEFAULT_SEED if seed is None else seed}
    for flag, name in (("batch", "batch_size"), ("stable", "stable_rounds"), ("verify", "verify_trials"),
                       ("bound", "coord_bound")):
        v = getattr(args, flag, None)
        if v is not None:
            kw[name] = v
    try:
        return SolveConfig(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _spec(args) -> ConditionSpec:
    try:
        spec = ConditionSpec(args.condition, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    alias = spec.alias()
    if alias and spec.kind not in (Kind.LIE_N,):
        print(f"note: for n = 2, {spec.kind.value} coincides with condition ({alias})", file=sys.stderr)
    return spec


def _emit(report, out: str | None) -> None:
    text = dumps(report)
    if out:
        Path(out).write_text(text)


def _fmt_vec(v) -> str:
    parts = []
    for x in v:
        re, im = format_scalar(x)
        parts.append(re if im == "0" else f"{re}{'' if im.startswith('-') else '+'}{im}i")
    return "(" + ", ".join(parts) + ")"


def cmd_algebra_info(args) -> int:
    alg = load_algebra(args.ref)
    z = center(alg)
    summary = {
        "label": alg.label,
        "dim": alg.dim,
        "unital": alg.unit is not None,
        "center_dim": z.dim,
        "basis_labels": list(alg.basis_labels),
    }
    if args.json:
        sys.stdout.write(dumps(summary))
    else:
        print(f"algebra  {alg.label}")
        print(f"dim      {alg.dim}")
        print(f"unit     {'yes ' + _fmt_vec(alg.unit) if alg.unit is not None else 'no'}")
        print(f"centre   dim {z.dim}")
        print(f"basis    {' '.join(alg.basis_labels)}")
    return EXIT_OK


def cmd_solve(args) -> int:
    alg = load_algebra(args.ref)
    spec = _spec(args)
    config = make_config(args)
    try:
        outcome = solve_space(alg, spec, config)
    except MaxRoundsExceeded as exc:
        _emit(solve_report(exc.outcome), args.out)
        print(f"{spec} on {alg.label}: round cap reached, partial dim {exc.outcome.dim}", file=sys.stderr)
        return EXIT_CAP
    _emit(solve_report(outcome), args.out)
    print(f"{spec} on {alg.label}: dim {outcome.dim} ({outcome.mode})")
    return EXIT_OK


def cmd_check(args) -> int:
    alg = load_algebra(args.ref)
    spec = _spec(args)
    config = make_config(args)
    try:
        phi = load_map(args.map, alg)
    except FormatError as exc:
        raise UsageError(str(exc)) from None
    res = check_map(alg, phi, spec, config)
    _emit(check_report(alg, spec, res, config), args.out)
    print(f"{spec} on {alg.label}: {res.verdict}")
    if res.witness is not None:
        w = res.witness
        print("witness  " + "  ".join(_fmt_vec(a.coords) for a in w.args))
        print(f"lhs      {_fmt_vec(w.lhs.coords)}")
        print(f"rhs      {_fmt_vec(w.rhs.coords)}  ({w.identity})")
    return EXIT_OK if res.passed else EXIT_FAIL


def _print_result(r) -> None:
    print(f"{r.id:9} {'pass' if r.passed else 'FAIL'}  ({len(r.assertions)} assertions)")
    for a in r.failures():
        print(f"    expected {a.expected!r}, got {a.actual!r}: {a.desc}")


def cmd_example(args) -> int:
    config = make_config(args)
    if args.id == "list":
        for i in EXAMPLE_IDS:
            case = example(i)
            print(f"{i}  {case.algebra.label:8} {case.title}")
        return EXIT_OK
    ids = EXAMPLE_IDS if args.id == "all" else (args.id,)
    if any(i not in EXAMPLE_IDS for i in ids):
        raise UsageError(f"unknown example {args.id!r}; known: {', '.join(EXAMPLE_IDS)}")
    results = [run_example(i, config) for i in ids]
    for r in results:
        _print_result(r)
    ok = all(r.passed for r in results)
    _emit({"seed": config.seed, "results": [r.to_json() for r in results],
           "aggregate": "pass" if ok else "fail"}, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_suite(args) -> int:
    config = make_config(args)
    report = full_report(config)
    for r in report["results"]:
        bad = [a for a in r["assertions"] if not a["pass"]]
        print(f"{r['id']:9} {'FAIL' if bad else 'pass'}  ({len(r['assertions'])} assertions)")
        for a in bad:
            print(f"    expected {a['expected']!r}, got {a['actual']!r}: {a['desc']}")
    print(f"aggregate {report['aggregate']}")
    _emit(report, args.out)
    return EXIT_OK if report["aggregate"] == "pass" else EXIT_FAIL


def cmd_span(args) -> int:
    alg = load_algebra(args.ref)
    if args.n < 2:
        raise UsageError("n must be >= 2")
    config = make_config(args)
    span = pn_span(alg, args.n, args.family, config)
    _emit(span_report(alg, args.n, args.family, span, config), args.out)
    print(f"p_{args.n} span over {args.family} on {alg.label}: dim {span.dim}")
    for v in span.basis:
        print(f"  {_fmt_vec(v)}")
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "check": cmd_check,
    "example": cmd_example,
    "suite": cmd_suite,
    "span": cmd_span,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = cmd_algebra_info if args.command == "algebra" else COMMANDS[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"lielab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, FileNotFoundError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"lielab: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except AlgebraError as exc:
        print(f"lielab: invalid algebra: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
