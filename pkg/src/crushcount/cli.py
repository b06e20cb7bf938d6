"""Command-line interface: ``crushcount {estimate,mc,exact,region,uniformity}``.

Exit codes: 0 success, 2 invalid configuration, 3 sampler budget exceeded,
4 oracle budget exceeded.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from .errors import InvalidInputError, OracleBudgetExceeded, SamplerBudgetExceeded
from .estimator import monte_carlo_estimate, splitting_estimate
from .grid import GridSpec, build_candy_grid, parse_hypergraph
from .lll import check_fpras_condition, scan_region
from .oracle import DEFAULT_BUDGET, exact_count
from .sampler import RULES
from .uniformity import uniformity_test

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SAMPLER_BUDGET = 3
EXIT_ORACLE_BUDGET = 4

SEED_ENV = "CRUSH_COUNT_SEED"


def _int_range(text: str) -> tuple[int, int]:
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO:HI, got {text!r}") from None


def _add_instance(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rows", type=int, help="grid rows m")
    p.add_argument("--cols", type=int, help="grid columns n")
    p.add_argument("--k", type=int, default=None, help="run length (default 3 for grids)")
    p.add_argument("--hypergraph", help="hypergraph file (V/E format) instead of a grid")
    p.add_argument("--colors", type=int, required=True, help="number of colours c")


def _add_output(p: argparse.ArgumentParser, formats=("json",)) -> None:
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--output", "-o", help="write the report here instead of stdout")


def _add_seed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None,
                   help=f"master seed (falls back to ${SEED_ENV}, then 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crushcount", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="multilevel-splitting estimate")
    _add_instance(p)
    _add_seed(p)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--samples-per-level", type=int, default=None,
                   help="override the Chernoff sample schedule")
    p.add_argument("--budget", type=int, default=None, help="resampling steps per sample")
    p.add_argument("--rule", choices=RULES, default="lex")
    p.add_argument("--strict", action="store_true",
                   help="refuse (c, k) outside the local-lemma guarantee")
    _add_output(p, ("json", "csv"))

    p = sub.add_parser("mc", help="plain Monte Carlo estimate")
    _add_instance(p)
    _add_seed(p)
    p.add_argument("--samples", type=int, default=10 ** 6)
    p.add_argument("--workers", type=int, default=1)
    _add_output(p)

    p = sub.add_parser("exact", help="exhaustive count")
    _add_instance(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max colourings to visit")
    p.add_argument("--workers", type=int, default=1)
    _add_output(p)

    p = sub.add_parser("region", help="local-lemma feasibility matrix")
    p.add_argument("--k", type=_int_range, default=(2, 8), help="LO:HI")
    p.add_argument("--colors", type=_int_range, default=(2, 16), help="LO:HI")
    _add_output(p, ("csv", "json"))

    p = sub.add_parser("uniformity", help="chi-square test of sampler output")
    _add_instance(p)
    _add_seed(p)
    p.add_argument("--samples", type=int, default=None, help="default 50 x |stable set|")
    p.add_argument("--rule", choices=RULES, default="lex")
    p.add_argument("--budget", type=int, default=None)
    _add_output(p)
    return parser


def resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InvalidInputError(f"${SEED_ENV} must be an integer, got {env!r}") from None
    return 0


def load_instance(args):
    has_grid = args.rows is not None or args.cols is not None
    if has_grid == bool(args.hypergraph):
        raise InvalidInputError("give exactly one of --rows/--cols or --hypergraph")
    if args.hypergraph:
        with open(args.hypergraph, encoding="utf-8") as fh:
            h = parse_hypergraph(fh)
        if args.k is not None and h.k is not None and args.k != h.k:
            raise InvalidInputError(f"--k {args.k} contradicts edge size {h.k} in {args.hypergraph}")
        return h
    if args.rows is None or args.cols is None:
        raise InvalidInputError("--rows and --cols are both required for a grid")
    return build_candy_grid(GridSpec(args.rows, args.cols, 3 if args.k is None else args.k))


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_estimate(args):
    h = load_instance(args)
    if args.colors < 1:
        raise InvalidInputError("--colors must be positive")
    if h.k is not None and h.k >= 2 and args.colors >= 2:
        verdict = check_fpras_condition(args.colors, h.k)
        if not verdict.feasible:
            banner = (f"warning: (c={args.colors}, k={h.k}) fails the local-lemma condition "
                      f"(1/c = {1 / args.colors:.5f} > {verdict.rhs:.5f}); "
                      "sampling has no polynomial-time guarantee")
            if args.strict:
                raise InvalidInputError(banner.replace("warning: ", ""))
            print(banner, file=sys.stderr)
    report = splitting_estimate(h, args.colors, args.epsilon, args.delta, resolve_seed(args.seed),
                                samples_per_level=args.samples_per_level, budget=args.budget,
                                workers=args.workers, rule=args.rule)
    _emit(report.levels_csv() if args.format == "csv" else report.to_json(), args.output)
    return report


def cmd_mc(args):
    h = load_instance(args)
    report = monte_carlo_estimate(h, args.colors, args.samples, resolve_seed(args.seed), args.workers)
    _emit(report.to_json(), args.output)
    return report


def cmd_exact(args):
    h = load_instance(args)
    result = exact_count(h, args.colors, args.budget, args.workers)
    _emit(result.to_json(), args.output)
    return result


def cmd_region(args):
    report = scan_region(args.colors, args.k)
    _emit(report.to_csv() if args.format == "csv" else report.to_json(), args.output)
    return report


def cmd_uniformity(args):
    h = load_instance(args)
    report = uniformity_test(h, args.colors, args.samples, resolve_seed(args.seed), args.rule,
                             args.budget)
    _emit(report.to_json(), args.output)
    return report


COMMANDS = {"estimate": cmd_estimate, "mc": cmd_mc, "exact": cmd_exact, "region": cmd_region,
            "uniformity": cmd_uniformity}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SamplerBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SAMPLER_BUDGET
    except OracleBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE_BUDGET
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
