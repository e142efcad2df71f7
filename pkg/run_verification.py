#!/usr/bin/env python3
"""
Command-line front end for the verification suites

Subcommands:
    symbols verify [--emit-certificates] [--golden-dir DIR]
    adn check --samples N
    geometry verify --fixture F [--m M] [--a A]
    flatbvp kernel --lmax L [--stability]
    flatbvp solve --input FILE --lmax L [--profiles]

Every subcommand accepts --seed and --output-dir and writes one JSON report
to the output directory.

Exit codes:
    0 every check passed, 1 a check failed, 2 usage error, 3 numerical abort

Environment Variables:
    - SEED, OUTPUT_DIR, LMAX, KERR_MASS, KERR_SPIN: defaults for the options above
    - TOL_*: per-family tolerances
    - USE_PREFECT: run suites as Prefect flows
    - See .env file for all configuration options
"""

import argparse
import sys
import traceback
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError, validator

from config.settings import settings
from pipelines.verification_pipeline import (
    STABILITY_LEVELS,
    adn_sweep_flow,
    flatbvp_kernel_flow,
    flatbvp_solve_flow,
    geometry_verification_flow,
    run_adn_suite,
    run_flatbvp_kernel_suite,
    run_flatbvp_solve_suite,
    run_geometry_suite,
    run_symbols_suite,
    symbols_verification_flow,
)
from reports.models import VerificationReport
from reports.writer import format_failure, write_report
from utils.errors import EXIT_CHECK_FAILURE, EXIT_OK, EXIT_USAGE, UsageError, VerificationError
from utils.logger import logger


class RunConfig(BaseModel):
    """Settings plus command-line overrides, echoed into every report"""
    command: str = Field(..., description="Subcommand, e.g. 'flatbvp solve'")
    seed: int = Field(..., description="Seed of every random draw")
    tolerances: Dict[str, float] = Field(..., description="Tolerance per check family")
    m: float = Field(..., gt=0, description="Fixture mass")
    a: float = Field(..., description="Fixture spin")
    lmax: int = Field(..., ge=2, description="Flat-solver truncation degree")
    output_dir: str = Field(..., description="Directory receiving reports and tables")

    @validator('tolerances')
    def validate_tolerances(cls, v):
        bad = sorted(name for name, value in v.items() if not value > 0)
        if bad:
            raise ValueError(f'tolerances must be positive: {bad}')
        return v

    class Config:
        json_schema_extra = {
            "example": {
                "command": "flatbvp kernel",
                "seed": 20240607,
                "tolerances": {"boundary": 1e-8},
                "m": 1.0,
                "a": 0.5,
                "lmax": 6,
                "output_dir": "./outputs"
            }
        }

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=f"{args.group} {args.action}",
            seed=settings.SEED if args.seed is None else args.seed,
            tolerances=settings.tolerances,
            m=settings.KERR_MASS if getattr(args, "m", None) is None else args.m,
            a=settings.KERR_SPIN if getattr(args, "a", None) is None else args.a,
            lmax=settings.LMAX if getattr(args, "lmax", None) is None else args.lmax,
            output_dir=args.output_dir or settings.OUTPUT_DIR,
        )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"random seed (default {settings.SEED})")
    common.add_argument("--output-dir", default=None, help=f"report directory (default {settings.OUTPUT_DIR})")
    common.add_argument("--prefect", action="store_true", help="run as a Prefect flow")

    parser = argparse.ArgumentParser(prog="run_verification.py",
                                     description="Verify ellipticity of the gauged Bartnik boundary value problem")
    groups = parser.add_subparsers(dest="group", required=True)

    symbols = groups.add_parser("symbols", help="exact symbolic identities")
    symbols_actions = symbols.add_subparsers(dest="action", required=True)
    verify = symbols_actions.add_parser("verify", parents=[common])
    verify.add_argument("--emit-certificates", action="store_true", help="write certificate text files")
    verify.add_argument("--golden-dir", default=None, help=f"golden files (default {settings.GOLDEN_DIR})")

    adn = groups.add_parser("adn", help="numeric ellipticity sweeps")
    adn_actions = adn.add_subparsers(dest="action", required=True)
    check = adn_actions.add_parser("check", parents=[common])
    check.add_argument("--samples", type=int, default=200)

    geometry = groups.add_parser("geometry", help="geometric identities on vacuum fixtures")
    geometry_actions = geometry.add_subparsers(dest="action", required=True)
    battery = geometry_actions.add_parser("verify", parents=[common])
    battery.add_argument("--fixture", required=True, help="minkowski, schwarzschild or kerr")
    battery.add_argument("--m", type=float, default=None, help="mass")
    battery.add_argument("--a", type=float, default=None, help="spin (kerr)")

    flatbvp = groups.add_parser("flatbvp", help="flat-background spectral solver")
    flatbvp_actions = flatbvp.add_subparsers(dest="action", required=True)
    kernel = flatbvp_actions.add_parser("kernel", parents=[common])
    kernel.add_argument("--lmax", type=int, default=None)
    kernel.add_argument("--stability", action="store_true",
                        help=f"also check the sigma_min band over L in {list(STABILITY_LEVELS)}")
    solve = flatbvp_actions.add_parser("solve", parents=[common])
    solve.add_argument("--input", required=True, help="boundary perturbation JSON")
    solve.add_argument("--lmax", type=int, default=None)
    solve.add_argument("--profiles", action="store_true", help="write radial profiles CSV")
    return parser


def run_command(args: argparse.Namespace, config: RunConfig) -> VerificationReport:
    """Dispatch to the flow or the plain suite function"""
    use_prefect = args.prefect or settings.USE_PREFECT
    echo = config.model_dump()
    out = Path(config.output_dir)

    if args.group == "symbols":
        certificate_dir = str(out / "certificates") if args.emit_certificates else None
        runner = symbols_verification_flow if use_prefect else run_symbols_suite
        return runner(echo, config.seed, golden_dir=args.golden_dir, certificate_dir=certificate_dir)

    if args.group == "adn":
        if args.samples < 1:
            raise UsageError(f"--samples must be positive, got {args.samples}")
        runner = adn_sweep_flow if use_prefect else run_adn_suite
        return runner(echo, args.samples, config.seed)

    if args.group == "geometry":
        table_path = str(out / f"geometry_{args.fixture}_convergence.csv")
        if use_prefect:
            return geometry_verification_flow(echo, args.fixture, config.seed, config.m, config.a, table_path)
        return run_geometry_suite(echo, args.fixture, config.seed, config.m, config.a, table_path=table_path)

    if args.action == "kernel":
        runner = flatbvp_kernel_flow if use_prefect else run_flatbvp_kernel_suite
        levels = STABILITY_LEVELS if args.stability else None
        return runner(echo, config.lmax, config.seed, stability_levels=levels)

    profiles_path = str(out / f"radial_profiles_L{config.lmax}.csv") if args.profiles else None
    runner = flatbvp_solve_flow if use_prefect else run_flatbvp_solve_suite
    return runner(echo, args.input, config.lmax, config.seed, profiles_path)


def report_path(args: argparse.Namespace, config: RunConfig) -> Path:
    out = Path(config.output_dir)
    if args.group == "geometry":
        return out / f"geometry_{args.fixture}_report.json"
    if args.group == "flatbvp":
        return out / f"flatbvp_{args.action}_L{config.lmax}_report.json"
    return out / f"{args.group}_report.json"


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one verification subcommand

    Returns:
        int: Exit code (0 pass, 1 check failure, 2 usage, 3 numerical abort)
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        config = RunConfig.from_args(args)
    except ValidationError as e:
        logger.error(f"❌ Invalid configuration: {e}")
        return EXIT_USAGE

    logger.info("=" * 70)
    logger.info(f"🚀 {config.command} (seed {config.seed}, tool {settings.TOOL_VERSION})")
    logger.info("=" * 70)

    try:
        report = run_command(args, config)
    except VerificationError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        logger.debug(traceback.format_exc())
        return e.exit_code

    path = write_report(report, report_path(args, config))

    logger.info("=" * 70)
    logger.info("📊 VERIFICATION SUMMARY")
    logger.info("=" * 70)
    for check in report.checks:
        marker = {"pass": "✅", "fail": "❌", "info": "ℹ️"}[check.status]
        logger.info(f"  {marker} {check.name}: {check.max_error:.3e} (tolerance {check.tolerance:.1e})")
    logger.info(f"💾 Report: {path}")
    logger.info("=" * 70)

    failure = report.first_failure()
    if failure is not None:
        logger.error(format_failure(failure))
        return EXIT_CHECK_FAILURE
    logger.info("🎉 All checks passed")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
