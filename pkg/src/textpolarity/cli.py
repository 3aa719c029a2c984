"""Command-line interface: ``textpolarity {polarity,binarize,sweep,synth}``.

Exit status is 0 on success, 1 for usage errors and 2 when the input
cannot be processed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import synth as synth_mod
from .conditions import ConditionConfig
from .errors import DomainError, PolarityError
from .histogram import build_histogram
from .imageio import read_gray, write_binary, write_gray
from .otsu import binarize, otsu_threshold
from .sweep import (DEFAULT_GAMMAS, DEFAULT_TREND_THRESHOLD, SweepConfig,
                    detect_polarity_histogram, sweep_mbcv, validate_grid,
                    write_curve_csv)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PROCESSING = 2

_SPEC_FACTORIES = {
    "case-i": synth_mod.case_i_spec,
    "case-ii": synth_mod.case_ii_spec,
    "unimodal": synth_mod.unimodal_spec,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _gamma_grid(text: str) -> tuple[float, ...]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    try:
        return validate_grid(values)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _add_sweep_flags(p):
    p.add_argument("--gammas", type=_gamma_grid, default=DEFAULT_GAMMAS,
                   help="comma-separated gamma grid starting at 1 (default: 1,1.5,...,5)")


def _add_condition_flags(p):
    d = ConditionConfig()
    p.add_argument("--balance-tol", type=float, default=d.balance_tol)
    p.add_argument("--epsilon", type=float, default=d.epsilon,
                   help="Case I bound on the normalized class-mean gap")
    p.add_argument("--delta", type=float, default=d.delta,
                   help="Case II bound on the normalized class-mean gap")
    p.add_argument("--t-low", type=float, default=d.t_low)
    p.add_argument("--t-high", type=float, default=d.t_high)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="textpolarity",
                     description="Text polarity detection from the MBCV-vs-gamma curve.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("polarity", help="detect text polarity of an image")
    p.add_argument("input")
    _add_sweep_flags(p)
    p.add_argument("--trend-threshold", type=float, default=DEFAULT_TREND_THRESHOLD)
    _add_condition_flags(p)
    p.add_argument("--json", action="store_true", help="emit one JSON object")

    p = sub.add_parser("binarize", help="Otsu-binarize an image to PGM")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--invert", action="store_true",
                   help="make the low class white and the high class black")

    p = sub.add_parser("sweep", help="export the MBCV-vs-gamma curve as CSV")
    p.add_argument("input")
    p.add_argument("--csv", required=True, dest="csv_path")
    _add_sweep_flags(p)
    p.add_argument("--order", choices=("gamma", "power"), default="gamma",
                   help="row order: increasing gamma or increasing power (1/gamma)")

    p = sub.add_parser("synth", help="write a seeded synthetic PGM")
    p.add_argument("--kind", choices=sorted(_SPEC_FACTORIES), default="case-i")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--width", type=int, default=128)
    p.add_argument("--height", type=int, default=128)
    for name in ("mode1-mean", "mode2-mean", "mode1-std", "mode2-std", "weight1"):
        p.add_argument(f"--{name}", type=float, default=None,
                       help="override the preset value")
    p.add_argument("-o", "--output", required=True)
    return parser


def _format_report(report) -> str:
    c = report.conditions
    cfg = c.config
    lines = [
        f"polarity: {report.polarity}",
        f"trend: {report.trend}",
        f"monotone_fraction: {report.monotone_fraction!r}",
        f"t_star: {report.otsu.t_star}",
        f"mbcv: {report.otsu.mbcv!r}",
        f"w1: {c.w1!r}",
        f"w2: {c.w2!r}",
        f"t_star_norm: {c.t_star_norm!r}",
        f"mean_gap_norm: {c.mean_gap_norm!r}",
        f"balanced: {c.balanced}",
        f"case_i: {c.case_i}",
        f"case_ii: {c.case_ii}",
        "condition bounds (tunable defaults, not canonical values): "
        f"balance_tol={cfg.balance_tol} epsilon={cfg.epsilon} delta={cfg.delta} "
        f"t_low={cfg.t_low} t_high={cfg.t_high}",
    ]
    return "\n".join(lines)


def _cmd_polarity(args, out):
    try:
        conditions = ConditionConfig(args.balance_tol, args.epsilon, args.delta,
                                     args.t_low, args.t_high)
        config = SweepConfig(args.gammas, args.trend_threshold, conditions)
    except (ValueError, DomainError) as exc:
        raise UsageError(f"textpolarity polarity: error: {exc}")
    hist = build_histogram(read_gray(args.input))
    report = detect_polarity_histogram(hist, config)
    if args.json:
        print(json.dumps(report.to_dict()), file=out)
    else:
        print(_format_report(report), file=out)


def _cmd_binarize(args, out):
    image = read_gray(args.input)
    result = otsu_threshold(build_histogram(image))
    write_binary(binarize(image, result.t_star, invert=args.invert), args.output)
    print(f"t_star: {result.t_star}", file=out)


def _cmd_sweep(args, out):
    hist = build_histogram(read_gray(args.input))
    write_curve_csv(sweep_mbcv(hist, args.gammas), args.csv_path, args.order)


def _cmd_synth(args, out):
    spec = _SPEC_FACTORIES[args.kind](args.seed, args.width, args.height)
    overrides = {k: getattr(args, k) for k in
                 ("mode1_mean", "mode2_mean", "mode1_std", "mode2_std", "weight1")
                 if getattr(args, k) is not None}
    try:
        spec = synth_mod.SynthSpec(**{**spec.to_dict(), **overrides})
    except ValueError as exc:
        raise UsageError(f"textpolarity synth: error: {exc}")
    write_gray(synth_mod.generate(spec), args.output)
    with open(args.output + ".spec.json", "w") as fh:
        json.dump({"kind": args.kind, **spec.to_dict()}, fh, indent=2)
        fh.write("\n")


_COMMANDS = {
    "polarity": _cmd_polarity,
    "binarize": _cmd_binarize,
    "sweep": _cmd_sweep,
    "synth": _cmd_synth,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except (OSError, PolarityError) as exc:
        print(f"textpolarity: {exc}", file=err)
        return EXIT_PROCESSING
    return EXIT_OK


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
