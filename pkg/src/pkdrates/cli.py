"""Command-line front end.

Exit codes: 0 success, 1 Monte-Carlo validation failed, 2 configuration
error, 3 numerical/evaluation error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import contextlib
import sys
from typing import Optional, Sequence

from .config import ConfigError, parse_config
from .csvio import emit_csv
from .sweep import PROTOCOLS, SweepConfig, SweepResult, evaluate_point, optimize_ppm, run_sweep
from .validation import format_table, validate

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3, 4


def _load_config(path: Optional[str]) -> SweepConfig:
    if path is None:
        return SweepConfig()
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


@contextlib.contextmanager
def _output(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _cmd_point(args, cfg: SweepConfig) -> int:
    point = evaluate_point(args.protocol, args.loss_db, cfg)
    with _output(args.out) as out:
        emit_csv(SweepResult([point]), out)
    return EXIT_OK


def _cmd_sweep(args, cfg: SweepConfig) -> int:
    result = run_sweep(cfg)
    with _output(args.out) as out:
        emit_csv(result, out)
    return EXIT_OK


def _cmd_optimize(args, cfg: SweepConfig) -> int:
    point, zeta = optimize_ppm(args.loss_db, cfg)
    sys.stdout.write("protocol,loss_db,zeta_opt,mu_opt,qber,bits_per_pulse,bits_per_second\n")
    sys.stdout.write(
        f"{point.protocol},{point.loss_db!r},{zeta!r},{point.mu!r},{point.qber!r},"
        f"{point.bits_per_pulse!r},{point.bits_per_second!r}\n"
    )
    return EXIT_OK


def _cmd_mc_validate(args, cfg: SweepConfig) -> int:
    rows = validate(args.protocol, args.loss_db, args.n, args.seed, cfg)
    sys.stdout.write(format_table(args.protocol, args.loss_db, args.n, args.seed, rows))
    return EXIT_OK if all(r.passed for r in rows) else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pkdrates",
        description="Asymptotic key rates for QKD and PKD protocols over lossy free-space links.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="evaluate one protocol at one loss")
    p.add_argument("--protocol", required=True, choices=PROTOCOLS)
    p.add_argument("--loss-db", type=float, required=True)
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_point)

    s = sub.add_parser("sweep", help="evaluate all configured protocols over the loss grid")
    s.add_argument("--config")
    s.add_argument("--out")
    s.set_defaults(func=_cmd_sweep)

    o = sub.add_parser("optimize", help="optimise the PPM PKD mean photon number")
    o.add_argument("--protocol", required=True, choices=("ppm_pkd",))
    o.add_argument("--loss-db", type=float, required=True)
    o.add_argument("--config")
    o.set_defaults(func=_cmd_optimize)

    m = sub.add_parser("mc-validate", help="compare closed forms with a Monte-Carlo simulation")
    m.add_argument("--protocol", required=True, choices=PROTOCOLS)
    m.add_argument("--loss-db", type=float, required=True)
    m.add_argument("--n", type=int, default=10_000_000)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--config")
    m.set_defaults(func=_cmd_mc_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        return args.func(args, cfg)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
