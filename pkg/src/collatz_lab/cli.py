"""Batch command-line front end; every subcommand prints machine-readable output.

Exit codes: 0 success, 2 usage error, 3 cap violation, 4 a proven-empty
category was constructed for a realizable run (the falsification signal).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import classify as classify_mod
from . import parity as parity_mod
from . import periodic as periodic_mod
from . import proportions as proportions_mod
from . import series as series_mod
from .coeffs import coeffs_of_seed, evaluate
from .core import CycleInfo, detect_cycle, trajectory
from .errors import (
    CollatzLabError,
    DegenerateOrder,
    EmptyCategoryViolation,
    IndexTooLarge,
    InsufficientEvidence,
    NotNested,
    OrderTooLarge,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_VIOLATION = 4

CAP_ENV_VAR = "COLLATZ_LAB_CAP"


@dataclass
class Config:
    matrix_order_cap: int = 20
    survey_max_steps: int = 10_000
    survey_bound: int = 1 << 128
    output_format: str = "json"  # json | csv | table

    @classmethod
    def from_env(cls, output_format: str = "json") -> "Config":
        cfg = cls(output_format=output_format)
        cap = os.environ.get(CAP_ENV_VAR)
        if cap is not None:
            try:
                cfg.matrix_order_cap = int(cap)
            except ValueError:
                raise SystemExit(f"{CAP_ENV_VAR} must be an integer, got {cap!r}")
            if cfg.matrix_order_cap < 1:
                raise SystemExit(f"{CAP_ENV_VAR} must be positive")
        return cfg


def _print_json(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _seed_range(text: str) -> tuple[int, int]:
    if ".." not in text:
        raise argparse.ArgumentTypeError("range must look like A..B")
    lo, hi = text.split("..", 1)
    a, b = int(lo), int(hi)
    if a < 1 or b < a:
        raise argparse.ArgumentTypeError(f"need 1 <= A <= B in range, got {text}")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collatz-lab",
        description="Exact coefficient calculus for the shortcut Collatz map.",
    )
    parser.add_argument(
        "--format",
        choices=("json", "csv", "table"),
        default="json",
        help="output format where a command supports more than one",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("traj", help="iterate the map and print every term")
    p.add_argument("seed", type=_positive_int)
    p.add_argument("--steps", type=_nonneg_int, required=True)

    p = sub.add_parser("coeffs", help="exact scale/offset decomposition at a depth")
    p.add_argument("seed", type=_positive_int)
    p.add_argument("depth", type=_nonneg_int)

    p = sub.add_parser("parity", help="parity-vector operations")
    psub = p.add_subparsers(dest="parity_command", required=True)
    enc = psub.add_parser("encode", help="parity vector of a seed")
    enc.add_argument("seed", type=_positive_int)
    enc.add_argument("length", type=_nonneg_int)
    slv = psub.add_parser("solve", help="residue class and minimal seed of a vector")
    slv.add_argument("bits")
    prb = psub.add_parser("probe", help="minimal-seed growth over nested prefixes")
    prb.add_argument("bits", nargs="+")

    p = sub.add_parser("matrix", help="stream a complete table to a file")
    p.add_argument("--generator", type=int, choices=(1, 2), required=True)
    p.add_argument("--order", type=_positive_int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("unit", help="limits and label of a repeating parity unit")
    p.add_argument("bits")

    p = sub.add_parser("cycle", help="detect the value cycle reached by a seed")
    p.add_argument("seed", type=_positive_int)
    p.add_argument("--max-steps", type=_positive_int, default=None)
    p.add_argument("--bound", type=_positive_int, default=None)

    p = sub.add_parser("classify", help="taxonomy verdict for a seed or a range")
    p.add_argument("seed", type=_positive_int, nargs="?")
    p.add_argument("--range", dest="seed_range", type=_seed_range, default=None)
    p.add_argument("--max-steps", type=_positive_int, default=None)
    p.add_argument("--bound", type=_positive_int, default=None)

    p = sub.add_parser("series", help="build a sequential series and its limits")
    p.add_argument(
        "--family", choices=("ones-zeros", "zeros-ones"), required=True
    )
    p.add_argument("--max", dest="max_index", type=_positive_int, required=True)

    p = sub.add_parser("proportions", help="exact class proportions at an order")
    p.add_argument("order", type=_positive_int, nargs="?")
    p.add_argument("--order", dest="order_opt", type=_positive_int, default=None)
    p.add_argument("--mode", choices=("exact", "enum"), default="exact")
    p.add_argument("--stat", choices=("a", "s"), default="a")
    p.add_argument("--sweep", action="store_true", help="tabulate across orders")
    p.add_argument("--orders", default=None, help="comma-separated orders for --sweep")
    p.add_argument(
        "--target",
        choices=("a", "sgap", "oddfrac"),
        default="a",
        help="statistic for --sweep",
    )
    return parser


def _rat(x) -> str | int | None:
    if x is None:
        return None
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _cmd_traj(args, cfg: Config) -> int:
    t = trajectory(args.seed, args.steps)
    _print_json({"seed": t.seed, "steps": t.steps, "terms": list(t.terms)})
    return EXIT_OK


def _cmd_coeffs(args, cfg: Config) -> int:
    pair = coeffs_of_seed(args.seed, args.depth)
    _print_json(
        {
            "seed": args.seed,
            "depth": pair.depth,
            "scale": {**pair.scale.to_json(), "value": str(pair.scale)},
            "offset": {**pair.offset.to_json(), "value": str(pair.offset)},
            "terminal": evaluate(pair, args.seed),
        }
    )
    return EXIT_OK


def _cmd_parity(args, cfg: Config) -> int:
    if args.parity_command == "encode":
        v = parity_mod.parity_vector(args.seed, args.length)
        _print_json({"seed": args.seed, "length": len(v), "parity": v.to_string()})
        return EXIT_OK
    if args.parity_command == "solve":
        v = parity_mod.ParityVector.from_string(args.bits)
        rc = parity_mod.solve_parity(v)
        _print_json(
            {
                "parity": v.to_string(),
                "residue": rc.residue,
                "modulus_exp": rc.modulus_exp,
                "modulus": rc.modulus,
                "minimal_seed": rc.minimal_member(),
            }
        )
        return EXIT_OK
    vectors = [parity_mod.ParityVector.from_string(b) for b in args.bits]
    report = parity_mod.convertibility_probe(vectors)
    _print_json(
        {
            "lengths": list(report.lengths),
            "minimal_seeds": list(report.minimal_seeds),
            "verdict": report.verdict,
            "stable_seed": report.stable_seed,
        }
    )
    return EXIT_OK


def _cmd_matrix(args, cfg: Config) -> int:
    matrix = parity_mod.build_matrix(args.generator, args.order, cfg.matrix_order_cap)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        if cfg.output_format == "csv":
            rows = parity_mod.write_matrix_csv(matrix, fh)
        else:
            rows = parity_mod.write_matrix_json(matrix, fh)
    _print_json({"written": args.out, "rows": rows, "format": cfg.output_format})
    return EXIT_OK


def _cmd_unit(args, cfg: Config) -> int:
    unit = periodic_mod.PeriodicUnit.of(parity_mod.ParityVector.from_string(args.bits))
    lim = periodic_mod.unit_limit(unit)
    verdict = classify_mod.classify_unit(unit)
    alpha = periodic_mod.is_alpha_vs_beta(unit)
    _print_json(
        {
            "unit": unit.bits.to_string(),
            "scale": {**unit.scale.to_json(), "value": str(unit.scale)},
            "offset": {**unit.offset.to_json(), "value": str(unit.offset)},
            "verdict": "converges" if lim.converges else "diverges",
            "a_inf": _rat(lim.a_inf) if lim.converges else "unbounded",
            "b_inf": _rat(lim.b_inf) if lim.converges else "unbounded",
            "alpha_fixed_point": getattr(alpha, "fixed_point", None),
            "label": verdict.label.format(),
        }
    )
    return EXIT_OK


def _cmd_cycle(args, cfg: Config) -> int:
    max_steps = args.max_steps or cfg.survey_max_steps
    bound = args.bound or cfg.survey_bound
    outcome = detect_cycle(args.seed, max_steps, bound)
    if isinstance(outcome, CycleInfo):
        _print_json(
            {
                "seed": args.seed,
                "entry_index": outcome.entry_index,
                "members": list(outcome.members),
                "min_member": outcome.min_member,
            }
        )
    else:
        _print_json(
            {
                "seed": args.seed,
                "no_cycle": outcome.reason,
                "steps_taken": outcome.steps_taken,
                "last_term": outcome.last_term,
            }
        )
    return EXIT_OK


def _cmd_classify(args, cfg: Config) -> int:
    max_steps = args.max_steps or cfg.survey_max_steps
    bound = args.bound or cfg.survey_bound
    if (args.seed is None) == (args.seed_range is None):
        raise SystemExit2("classify needs exactly one of a seed or --range")
    if args.seed is not None:
        verdict = classify_mod.classify_seed(args.seed, max_steps, bound)
        flag = classify_mod.conjecture_watchlist(verdict)
        if flag.flagged:
            sys.stderr.write(f"WATCH: {flag.reason}\n")
        _print_json(verdict.to_json())
        return EXIT_OK
    lo, hi = args.seed_range
    summary = classify_mod.survey(
        lo, hi, max_steps, bound, emit=lambda v: _print_json(v.to_json())
    )
    for reason in summary.watch_flags:
        sys.stderr.write(f"WATCH: {reason}\n")
    return EXIT_OK


def _cmd_series(args, cfg: Config) -> int:
    family = (
        series_mod.Family.ONES_THEN_ZEROS
        if args.family == "ones-zeros"
        else series_mod.Family.ZEROS_THEN_ONES
    )
    report = series_mod.build_series(family, args.max_index)
    limits = series_mod.series_limits(report)
    if cfg.output_format == "table":
        sys.stdout.write(series_mod.report_table(report) + "\n")
        sys.stdout.write(f"limits: {json.dumps(limits.to_json())}\n")
    else:
        payload = series_mod.report_to_json(report)
        payload["limits"] = limits.to_json()
        _print_json(payload)
    return EXIT_OK


def _cmd_proportions(args, cfg: Config) -> int:
    if args.sweep:
        if not args.orders:
            raise SystemExit2("--sweep requires --orders")
        orders = [int(x) for x in args.orders.split(",") if x]
        target = {
            "a": proportions_mod.SweepTarget.A_PROPORTION,
            "sgap": proportions_mod.SweepTarget.S_GAP,
            "oddfrac": proportions_mod.SweepTarget.ODD_FRACTION,
        }[args.target]
        report = proportions_mod.convergence_sweep(orders, target)
        if cfg.output_format == "csv":
            sys.stdout.write(report.to_csv() + "\n")
        else:
            _print_json(report.to_json())
        return EXIT_OK

    order = args.order_opt if args.order_opt is not None else args.order
    if order is None:
        raise SystemExit2("proportions needs an order (positional or --order)")
    if args.stat == "s":
        report = proportions_mod.proportion_s(order)
    else:
        mode = (
            proportions_mod.Mode.ENUMERATION
            if args.mode == "enum"
            else proportions_mod.Mode.EXACT_BINOMIAL
        )
        report = proportions_mod.proportion_a(order, mode)
    if cfg.output_format == "csv":
        sys.stdout.write("order,plus_count,total,ratio_num,ratio_den\n")
        sys.stdout.write(report.to_csv_row() + "\n")
    else:
        _print_json(report.to_json())
    return EXIT_OK


class SystemExit2(Exception):
    """Usage error detected after argparse (maps to exit code 2)."""


_COMMANDS = {
    "traj": _cmd_traj,
    "coeffs": _cmd_coeffs,
    "parity": _cmd_parity,
    "matrix": _cmd_matrix,
    "unit": _cmd_unit,
    "cycle": _cmd_cycle,
    "classify": _cmd_classify,
    "series": _cmd_series,
    "proportions": _cmd_proportions,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        # argparse already printed the usage message
        return EXIT_USAGE if err.code not in (0, None) else EXIT_OK
    cfg = Config.from_env(output_format=args.format)
    try:
        return _COMMANDS[args.command](args, cfg)
    except SystemExit2 as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_USAGE
    except (OrderTooLarge, IndexTooLarge) as err:
        sys.stderr.write(f"cap violation: {err}\n")
        return EXIT_CAP
    except EmptyCategoryViolation as err:
        sys.stderr.write(f"EMPTY-CATEGORY VIOLATION: {err}\n")
        return EXIT_VIOLATION
    except (NotNested, InsufficientEvidence, DegenerateOrder, ValueError) as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_USAGE
    except CollatzLabError as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
