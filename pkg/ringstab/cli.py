# ringstab/cli.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
"""
Command-line front end.

Every subcommand prints one JSON object on stdout (fn-table prints CSV).
Exit codes: 0 success, 1 computation error, 2 usage error. Diagnostics go
to stderr through the `ringstab` logger.
"""
import argparse
import json
import math
import sys
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from . import __version__
from .core import equilibrium, stability
from .core.errors import ConfigurationError, InvalidRatioError, RingStabilityError
from .core.oracle import jacobi_eigenvalues
from .core.special_functions import eval_F, eval_f
from .models.reports import OutputRecord, StabilityReport, fmt
from .models.ring import RingConfiguration
from .services.verification import VerifyContext, registry, run_verification
from .utils.config import Settings, load_settings
from .utils.logger import setup_logger

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_USAGE = 2


def _fmt_list(values: Sequence[float]) -> List[str]:
    return [fmt(v) for v in values]


def _report_payload(report: StabilityReport) -> Dict[str, Any]:
    return {
        "verdict": report.verdict,
        "method": report.method,
        "mu1": fmt(report.mu1),
        "mu2": fmt(report.mu2),
        "eigenvalues": _fmt_list(report.eigenvalues),
        "zero_mode_count": report.zero_mode_count,
        "zero_tol": fmt(report.zero_tol),
        "failed_conditions": report.failed_conditions,
    }


def _ring_for(n: int, ratio: float) -> RingConfiguration:
    if n % 2:
        if ratio != 1.0:
            raise InvalidRatioError(
                f"odd n={n} admits only the one-parameter family of equal masses; ratio must be 1, got {ratio}"
            )
        return RingConfiguration.regular(n)
    return RingConfiguration.alternating(n // 2, *stability.masses_for_ratio(ratio))


def cmd_classify(args, settings: Settings) -> Dict[str, Any]:
    report = stability.classify(
        args.n, args.ratio, args.zero_tol, zero_tol_factor=settings.ZERO_TOL_FACTOR
    )
    return _report_payload(report)


def cmd_interval(args, settings: Settings) -> Dict[str, Any]:
    interval = stability.stability_interval(args.j)
    if interval.kind == "all":
        lo, hi = "0", "inf"
    elif interval.kind == "empty":
        lo = hi = None
    else:
        lo, hi = fmt(interval.lo), fmt(interval.hi)
    return {
        "kind": interval.kind,
        "lo": lo,
        "hi": hi,
        "h4": fmt(interval.h4),
        "h5": fmt(interval.h5),
        "g1_2": fmt(interval.g1_2),
        "g2": fmt(interval.g2),
        "g3_2": fmt(interval.g3_2),
    }


def cmd_spectrum(args, settings: Settings) -> Dict[str, Any]:
    report = stability.classify(
        args.n, args.ratio, args.zero_tol, zero_tol_factor=settings.ZERO_TOL_FACTOR
    )
    hess = stability.hessian(_ring_for(args.n, args.ratio))
    oracle = jacobi_eigenvalues(
        hess.dense, sweep_tol=settings.SWEEP_TOL, max_sweeps=settings.MAX_SWEEPS
    )
    analytic = np.asarray(report.eigenvalues)
    return {
        "verdict": report.verdict,
        "analytic": _fmt_list(analytic),
        "oracle": _fmt_list(oracle),
        "max_deviation": fmt(float(np.max(np.abs(analytic - oracle)))),
    }


def cmd_rank(args, settings: Settings) -> Dict[str, Any]:
    zero_tol = args.zero_tol if args.zero_tol is not None else settings.RANK_TOL_FACTOR * args.n
    rank = equilibrium.m_rank(args.n, zero_tol, settings.RANK_MARGIN)
    family = equilibrium.mass_family(args.n, zero_tol, settings.RANK_MARGIN)
    return {
        "rank": rank,
        "zero_tol": fmt(zero_tol),
        "f1": _fmt_list(equilibrium.f1_table(args.n)),
        "family": {
            "parameter_count": family.parameter_count,
            "pattern": family.pattern,
            "description": family.description,
        },
    }


def cmd_residual(args, settings: Settings) -> Dict[str, Any]:
    config = _ring_for(args.n, args.ratio)
    if args.perturb > 0.0:
        rng = np.random.default_rng(args.seed)
        shift = rng.uniform(-args.perturb, args.perturb, size=config.n)
        config = config.with_angles(config.theta + shift)
    values = equilibrium.residual(config)
    gradient = stability.hall_gradient(config)
    return {
        "masses": _fmt_list(config.masses),
        "angles": _fmt_list(config.angles),
        "residual": _fmt_list(values),
        "max_abs": fmt(float(np.max(np.abs(values)))),
        "gradient": _fmt_list(gradient),
    }


def cmd_sweep(args, settings: Settings) -> Dict[str, Any]:
    if not (0.0 < args.start < args.stop):
        raise ConfigurationError(f"need 0 < --from < --to, got {args.start}, {args.stop}")
    ratios = np.geomspace(args.start, args.stop, args.points)
    reports = stability.sweep(
        args.n, ratios, args.zero_tol, zero_tol_factor=settings.ZERO_TOL_FACTOR
    )
    return {
        "points": [
            {"ratio": fmt(r.ratio), "verdict": r.verdict, "failed_conditions": r.failed_conditions}
            for r in reports
        ]
    }


def cmd_verify(args, settings: Settings) -> Dict[str, Any]:
    ctx = VerifyContext(
        sweep_tol=settings.SWEEP_TOL,
        max_sweeps=settings.MAX_SWEEPS,
        hessian_step=settings.HESSIAN_STEP,
        gradient_step=settings.GRADIENT_STEP,
        rank_tol_factor=settings.RANK_TOL_FACTOR,
        rank_margin=settings.RANK_MARGIN,
        seed=args.seed,
    )
    workers = args.workers if args.workers is not None else settings.VERIFY_WORKERS
    try:
        results = run_verification(ctx, workers=workers, only=args.only)
    except ValueError as e:
        raise ConfigurationError(str(e)) from e
    return {
        "passed": all(r.passed for r in results),
        "checks": [r.model_dump() for r in results],
    }


def write_fn_table(args, out) -> None:
    if args.points < 2:
        raise ConfigurationError(f"--points must be at least 2, got {args.points}")
    phi = np.linspace(args.start, args.stop, args.points)
    values = eval_F(phi) if args.fn == "F" else eval_f(phi)
    out.write("phi,value\n")
    for p, v in zip(phi, values):
        out.write(f"{fmt(p)},{fmt(v)}\n")


def _positive_float(text: str) -> float:
    value = _finite_float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _finite_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringstab",
        description="Linear stability of regular n-gon relative equilibria of the (1+n)-body problem",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", default=None, help="optional YAML file with setting overrides")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--zero-tol", type=_positive_float, default=None, help="absolute zero threshold")
    parser.add_argument("--workers", type=_positive_int, default=None, help="threads for verify")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="stability verdict with eigenvalue evidence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ratio", type=_finite_float, default=1.0)

    p = sub.add_parser("interval", help="mass ratios giving a stable 2j-gon")
    p.add_argument("--j", type=int, required=True)

    p = sub.add_parser("spectrum", help="analytic spectrum next to the Jacobi oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ratio", type=_finite_float, default=1.0)

    p = sub.add_parser("rank", help="rank of M_n, the f1 table and the admissible masses")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("residual", help="equilibrium residual of a (perturbed) regular ring")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ratio", type=_finite_float, default=1.0)
    p.add_argument("--perturb", type=_finite_float, default=0.0, help="max angular shift per body")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("fn-table", help="CSV samples of F or f")
    p.add_argument("--fn", choices=("F", "f"), required=True)
    p.add_argument("--from", dest="start", type=_finite_float, required=True)
    p.add_argument("--to", dest="stop", type=_finite_float, required=True)
    p.add_argument("--points", type=int, required=True)

    p = sub.add_parser("sweep", help="classify over log-spaced mass ratios")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--from", dest="start", type=_finite_float, default=0.01)
    p.add_argument("--to", dest="stop", type=_finite_float, default=100.0)
    p.add_argument("--points", type=_positive_int, default=41)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--only", nargs="+", choices=registry.names(), default=None)
    p.add_argument("--seed", type=int, default=20260101)
    return parser


COMMANDS = {
    "classify": cmd_classify,
    "interval": cmd_interval,
    "spectrum": cmd_spectrum,
    "rank": cmd_rank,
    "residual": cmd_residual,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def _inputs(args) -> Dict[str, Any]:
    skip = {"command", "config", "log_level"}
    return {key: value for key, value in vars(args).items() if key not in skip and value is not None}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        settings = load_settings(args.config)
    except (ConfigurationError, ValidationError) as e:
        setup_logger("ringstab", level="ERROR").error("invalid configuration: %s", e)
        return EXIT_USAGE

    logger = setup_logger(
        "ringstab", level=args.log_level or settings.LOG_LEVEL, log_dir=settings.LOG_DIR
    )
    logger.debug("%s %s: %s", settings.APP_NAME, settings.APP_VERSION, args.command)

    try:
        if args.command == "fn-table":
            write_fn_table(args, out)
            return EXIT_OK
        results = COMMANDS[args.command](args, settings)
    except ConfigurationError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except RingStabilityError as e:
        logger.error("%s", e)
        return EXIT_COMPUTATION

    record = OutputRecord(
        command=args.command, inputs=_inputs(args), results=results, version=__version__
    )
    out.write(json.dumps(record.model_dump()) + "\n")
    if args.command == "verify" and not results["passed"]:
        return EXIT_COMPUTATION
    return EXIT_OK


def main() -> int:
    return run(sys.argv[1:])
