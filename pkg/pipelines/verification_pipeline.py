"""
Prefect pipelines for the verification suites
One flow per CLI suite, one task per check group
"""

import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from prefect import flow, task

from adn.complementing import (
    certificate_at_zero_eta,
    complementing_check_symbolic,
    complementing_sweep,
    ellipticity_sweep,
    symbolic_numeric_agreement,
)
from config.settings import settings
from flatbvp.data import load_perturbation
from flatbvp.solve import harmonic_vector_flat, kernel_check, solve
from flatbvp.unknowns import radial_profiles
from geometry.identities import geometry_identity_battery
from reports.models import CheckResult, SolveReport, VerificationReport
from reports.writer import write_certificates, write_table
from symbols.boundary import build_boundary_symbol, display_consistency
from symbols.determinants import (
    complementing_certificate,
    det_bhat_closed_form,
    det_homotopy,
    det_tilde,
    derived_rows_certificate,
    expected_certificate,
    expected_det_bhat,
    homotopy_certificate,
    is_homogeneous,
    printed_det_bhat,
)
from symbols.golden import verify_goldens
from symbols.homotopy import (
    build_homotopy_symbol,
    expected_homotopy_certificate,
    expected_homotopy_determinant,
    matches_flat_boundary,
)
from symbols.interior import build_interior_symbol, interior_determinant
from symbols.reduction import expected_ratio, replay
from symring import serialize
from utils.errors import ReplayMismatchError
from utils.logger import logger

# Configure Prefect to run in ephemeral mode (no server required)
if not os.getenv("PREFECT_API_URL"):
    os.environ["PREFECT_API_URL"] = settings.PREFECT_API_URL

# exact identities report max_error 0 on success and 1 on failure
EXACT_TOLERANCE = 0.0


def exact_check(name: str, identity: str, holds: bool, status: Optional[str] = None,
                **details: Any) -> CheckResult:
    if status is None:
        status = "pass" if holds else "fail"
    return CheckResult(
        name=name,
        identity=identity,
        status=status,
        max_error=0.0 if holds else 1.0,
        tolerance=EXACT_TOLERANCE,
        details=details,
    )


def check_from_dict(check: Dict[str, Any]) -> CheckResult:
    """CheckResult from a geometry battery entry"""
    details = {"n_points": check["n_points"]}
    if "table" in check:
        details["table"] = check["table"]
    return CheckResult(
        name=check["name"],
        identity=check["identity"],
        status=check["status"],
        max_error=check["max_error"],
        tolerance=check["tolerance"],
        details=details,
    )


def _call(group, use_tasks: bool, *args, **kwargs):
    """Run a check group as a Prefect task or as the plain function"""
    return group(*args, **kwargs) if use_tasks else group.fn(*args, **kwargs)


def _report(suite: str, seed: int, config: Dict[str, Any], checks: List[CheckResult],
            solves: Optional[List[SolveReport]] = None) -> VerificationReport:
    report = VerificationReport(
        tool_version=settings.TOOL_VERSION,
        suite=suite,
        seed=seed,
        config=config,
        checks=checks,
        solves=solves or [],
    )
    failure = report.first_failure()
    if failure is None:
        logger.info(f"📊 {suite}: {len(checks)} checks, all passed")
    else:
        failed = sum(1 for c in checks if c.status == "fail")
        logger.error(f"📊 {suite}: {failed}/{len(checks)} checks failed, first {failure.name}")
    return report


# Symbolic identities

@task(name="symbol_identities", retries=0)
def symbol_identities_task() -> List[CheckResult]:
    """
    Exact identities of the interior, boundary and homotopy symbols

    Returns:
        One CheckResult per identity; display comparisons are "info"
    """
    logger.info("📐 Checking symbolic identities")
    checks = []

    interior = build_interior_symbol()
    checks.append(exact_check(
        "interior_determinant", "det L(xi) = a(xi)^11",
        interior_determinant(interior) == interior.scalar_a ** 11,
    ))

    try:
        replay(build_boundary_symbol().tilde)
        checks.append(exact_check("reduction_replay", "row and column operations reproduce every display", True))
    except ReplayMismatchError as e:
        checks.append(exact_check(
            "reduction_replay", "row and column operations reproduce every display", False,
            stage=e.stage, row=e.row + 1, col=e.col + 1, expected=str(e.expected), actual=str(e.actual),
        ))
        return checks

    ratio = det_tilde() / det_bhat_closed_form()
    checks.append(exact_check(
        "determinant_ratio", "det B~ = -det B^ / (32 N^11)", ratio == expected_ratio(), ratio=serialize(ratio),
    ))
    checks.append(exact_check(
        "det_bhat_closed_form", "det B^ = 8 N^4 (N^2 xi1^2 - S^2)^2 (xi2^2 + xi3^2)^2",
        det_bhat_closed_form() == expected_det_bhat(),
    ))
    checks.append(exact_check(
        "det_bhat_printed_variant", "det B^ against the printed factor (xi1^2 + xi2^2)^2",
        det_bhat_closed_form() == printed_det_bhat(), status="info",
    ))
    checks.append(exact_check(
        "tilde_homogeneity", "det B~(lambda xi) = lambda^8 det B~(xi)", is_homogeneous(det_tilde(), 8),
    ))

    mismatches = display_consistency()
    checks.append(exact_check(
        "display_consistency", "term-by-term boundary rows against the displayed B~",
        not mismatches, status="info",
        entries=[f"{row}/{col}: {serialize(diff)}" for row, col, diff in mismatches],
    ))

    homotopy = build_homotopy_symbol()
    checks.append(exact_check("homotopy_endpoint", "D_0 is the row-scaled flat B~", matches_flat_boundary(homotopy)))
    checks.append(exact_check(
        "homotopy_determinant", "det D_t closed form", det_homotopy() == expected_homotopy_determinant(),
    ))
    checks.append(exact_check(
        "homotopy_certificate", "rem(det D_t, z^2 + |eta|^2) closed form",
        homotopy_certificate() == expected_homotopy_certificate(),
        certificate=serialize(homotopy_certificate()),
    ))
    return checks


@task(name="complementing_certificate", retries=0)
def complementing_certificate_task() -> List[CheckResult]:
    result = complementing_check_symbolic()
    checks = [
        exact_check(
            "complementing_certificate", "rem(det B^(eta + z mu), a(eta + z mu)) = 8 N^8 |eta|^8",
            result["pass"],
            certificate=result["certificate"],
            x_free=result["x_free"],
            matches_expected=result["matches_expected"],
            homotopy_grid_min=result["homotopy_grid_min"],
        ),
        exact_check(
            "certificate_vanishes_at_zero_eta", "certificate = 0 at eta = 0",
            certificate_at_zero_eta(),
        ),
    ]
    derived = derived_rows_certificate()
    checks.append(exact_check(
        "derived_rows_certificate", "certificate of the term-by-term boundary rows",
        not derived.is_zero() and derived.free_of("z"), status="info", certificate=serialize(derived),
    ))
    return checks


@task(name="golden_files", retries=0)
def golden_files_task(golden_dir: Optional[str] = None) -> List[CheckResult]:
    """One check per golden file; a failing check carries the first differing entry"""
    checks = []
    for filename, diffs in verify_goldens(golden_dir).items():
        details: Dict[str, Any] = {"differing_entries": len(diffs)}
        if diffs:
            key, golden, engine = diffs[0]
            details.update(entry=key, golden=golden, engine=engine)
        checks.append(exact_check(f"golden_{Path(filename).stem}", f"engine output matches {filename}",
                                  not diffs, **details))
    return checks


def symbol_certificates() -> Dict[str, Dict[str, Any]]:
    """Certificate expressions written by --emit-certificates"""
    certificate = complementing_certificate()
    return {
        "complementing_certificate": {
            "identity": "rem(det B^(eta + z mu), a(eta + z mu))",
            "status": "pass" if certificate == expected_certificate() else "fail",
            "expressions": [("certificate", serialize(certificate)),
                            ("expected", serialize(expected_certificate()))],
        },
        "det_bhat": {
            "identity": "det B^",
            "status": "pass" if det_bhat_closed_form() == expected_det_bhat() else "fail",
            "expressions": [("det_bhat", serialize(det_bhat_closed_form())),
                            ("printed_variant", serialize(printed_det_bhat()))],
        },
        "homotopy_certificate": {
            "identity": "rem(det D_t(eta + z mu), z^2 + |eta|^2)",
            "status": "pass" if homotopy_certificate() == expected_homotopy_certificate() else "fail",
            "expressions": [("certificate", serialize(homotopy_certificate()))],
        },
    }


def run_symbols_suite(config: Dict[str, Any], seed: Optional[int] = None, golden_dir: Optional[str] = None,
                      certificate_dir: Optional[str] = None, use_tasks: bool = False) -> VerificationReport:
    """
    Symbolic identities, complementing certificate and golden files

    Args:
        config: Run configuration echoed into the report
        seed: Seed recorded in the report header
        golden_dir: Golden directory (defaults to settings.GOLDEN_DIR)
        certificate_dir: Write certificate text files here when given
        use_tasks: Run check groups as Prefect tasks
    """
    seed = settings.SEED if seed is None else seed
    logger.info("🚀 Starting symbols verification")
    checks = _call(symbol_identities_task, use_tasks)
    checks += _call(complementing_certificate_task, use_tasks)
    checks += _call(golden_files_task, use_tasks, golden_dir)
    if certificate_dir is not None:
        write_certificates(symbol_certificates(), certificate_dir, settings.TOOL_VERSION, seed)
    return _report("symbols", seed, config, checks)


# Numeric ellipticity sweeps

@task(name="adn_sweeps", retries=0)
def adn_sweeps_task(samples: int, seed: int) -> List[CheckResult]:
    checks = []
    for result in (complementing_sweep(samples, seed), ellipticity_sweep(samples, seed)):
        checks.append(CheckResult(
            name=result["check_name"],
            identity="det B~ at the upper root against its closed form"
            if result["check_name"] == "complementing_numeric" else "roots of a(eta + z mu) are conjugate",
            status="pass" if result["pass"] else "fail",
            max_error=result["worst_relative_error"],
            tolerance=settings.TOL_COMPLEMENTING,
            details={key: value for key, value in result.items()
                     if key not in ("check_name", "worst_relative_error", "pass")},
        ))
    return checks


@task(name="adn_agreement", retries=0)
def adn_agreement_task(samples: int, seed: int) -> List[CheckResult]:
    worst = symbolic_numeric_agreement(samples, seed)
    return [CheckResult(
        name="symbolic_numeric_agreement",
        identity="numeric det B~ at the root matches the certificate",
        status="pass" if worst < settings.TOL_COMPLEMENTING else "fail",
        max_error=worst,
        tolerance=settings.TOL_COMPLEMENTING,
        details={"samples": samples},
    )]


def run_adn_suite(config: Dict[str, Any], samples: int = 200, seed: Optional[int] = None,
                  use_tasks: bool = False) -> VerificationReport:
    seed = settings.SEED if seed is None else seed
    logger.info(f"🚀 Starting ADN sweep with {samples} samples (seed {seed})")
    checks = _call(adn_sweeps_task, use_tasks, samples, seed)
    checks += _call(adn_agreement_task, use_tasks, min(samples, 50), seed)
    return _report("adn", seed, config, checks)


# Geometry identities

@task(name="geometry_battery", retries=0)
def geometry_battery_task(fixture_name: str, seed: int, m: Optional[float] = None, a: Optional[float] = None,
                          probe_count: Optional[int] = None) -> List[CheckResult]:
    return [check_from_dict(c) for c in geometry_identity_battery(fixture_name, seed, m, a, probe_count)]


def run_geometry_suite(config: Dict[str, Any], fixture_name: str, seed: Optional[int] = None,
                       m: Optional[float] = None, a: Optional[float] = None, probe_count: Optional[int] = None,
                       table_path: Optional[str] = None, use_tasks: bool = False) -> VerificationReport:
    """
    Identity battery on one fixture

    Args:
        table_path: Write the Richardson residual-vs-step table here when given
    """
    seed = settings.SEED if seed is None else seed
    logger.info(f"🚀 Starting geometry verification on {fixture_name}")
    checks = _call(geometry_battery_task, use_tasks, fixture_name, seed, m, a, probe_count)
    if table_path is not None:
        rows = next((c.details["table"] for c in checks if "table" in c.details), [])
        write_table(pd.DataFrame(rows, columns=["step", "residual", "ratio", "ok"]), table_path)
    return _report("geometry", seed, config, checks)


# Flat boundary value problem

STABILITY_LEVELS = (4, 6, 8)


def solve_check(name: str, identity: str, value: float, tolerance: float, **details: Any) -> CheckResult:
    return CheckResult(
        name=name,
        identity=identity,
        status="pass" if value < tolerance else "fail",
        max_error=value,
        tolerance=tolerance,
        details=details,
    )


def kernel_result(report: SolveReport) -> CheckResult:
    name = "flat_kernel" if report.mode == "kernel" else f"harmonic_vector_{report.boundary}"
    identity = ("homogeneous flat problem is injective modulo rigid motions" if report.mode == "kernel"
                else f"decaying harmonic 4-vectors with zero {report.boundary} data vanish")
    return CheckResult(
        name=name,
        identity=identity,
        status=report.status,
        max_error=float(report.reduced_kernel_dim),
        tolerance=0.0,
        details={
            "lmax": report.lmax,
            "kernel_dim": report.kernel_dim,
            "rigid_dim": report.rigid_dim,
            "sigma_min": report.sigma_min,
            "sigma_max": report.sigma_max,
        },
    )


@task(name="flat_kernel", retries=0)
def flat_kernel_task(lmax: int) -> List[SolveReport]:
    return [kernel_check(lmax)] + [harmonic_vector_flat(lmax, boundary) for boundary in ("dirichlet", "neumann")]


def sigma_min_stability(reports: Sequence[SolveReport], band: Optional[float] = None) -> CheckResult:
    """
    sigma_min on the rigid complement stays within a factor `band` across truncations

    Fails as well when any truncation has a reduced kernel.
    """
    band = settings.SIGMA_MIN_BAND if band is None else band
    sigmas = [r.sigma_min for r in reports]
    ratio = max(sigmas) / min(sigmas) if min(sigmas) > 0 else float("inf")
    injective = all(r.reduced_kernel_dim == 0 for r in reports)
    return CheckResult(
        name="sigma_min_stability",
        identity=f"max/min of sigma_min over L in {[r.lmax for r in reports]} below {band:g}",
        status="pass" if injective and ratio < band else "fail",
        max_error=ratio,
        tolerance=band,
        details={
            "lmax": [r.lmax for r in reports],
            "sigma_min": sigmas,
            "reduced_kernel_dim": [r.reduced_kernel_dim for r in reports],
        },
    )


@task(name="sigma_min_stability", retries=0)
def sigma_min_stability_task(levels: Sequence[int], known: Optional[List[SolveReport]] = None) -> List[SolveReport]:
    reused = {r.lmax: r for r in known or [] if r.mode == "kernel"}
    return [reused.get(L) or kernel_check(L) for L in levels]


def run_flatbvp_kernel_suite(config: Dict[str, Any], lmax: Optional[int] = None, seed: Optional[int] = None,
                             use_tasks: bool = False,
                             stability_levels: Optional[Sequence[int]] = None) -> VerificationReport:
    seed = settings.SEED if seed is None else seed
    lmax = settings.LMAX if lmax is None else lmax
    logger.info(f"🚀 Starting flat kernel check at L={lmax}")
    solves = _call(flat_kernel_task, use_tasks, lmax)
    checks = [kernel_result(r) for r in solves]
    if stability_levels:
        logger.info(f"📐 sigma_min band over L={list(stability_levels)}")
        ladder = _call(sigma_min_stability_task, use_tasks, list(stability_levels), solves)
        checks.append(sigma_min_stability(ladder))
        solves = solves + [r for r in ladder if r.lmax != lmax]
    return _report("flatbvp-kernel", seed, config, checks, solves)


@task(name="flat_solve", retries=0)
def flat_solve_task(input_path: str, lmax: int, seed: int, profiles_path: Optional[str] = None
                    ) -> Tuple[List[CheckResult], List[SolveReport]]:
    perturbation = load_perturbation(input_path)
    unknowns, report = solve(perturbation, lmax, seed=seed)
    refined, refined_report = solve(perturbation, lmax + 2, seed=seed)
    checks = [
        solve_check("boundary_residual", "linearized Bartnik data reproduced at r = 1",
                    report.boundary_residual, settings.TOL_BOUNDARY),
        solve_check("interior_residual", "componentwise Laplacian vanishes off the boundary",
                    report.interior_residual, settings.TOL_INTERIOR),
        solve_check("gauge_residual", "harmonic gauge holds off the boundary",
                    report.gauge_residual, settings.TOL_GAUGE),
        solve_check("truncation_stability", f"coefficients unchanged from L={lmax} to L={lmax + 2}",
                    unknowns.max_difference(refined), settings.TOL_STABILITY),
    ]
    if profiles_path is not None:
        write_table(radial_profiles(unknowns), profiles_path)
    return checks, [report, refined_report]


def run_flatbvp_solve_suite(config: Dict[str, Any], input_path: str, lmax: Optional[int] = None,
                            seed: Optional[int] = None, profiles_path: Optional[str] = None,
                            use_tasks: bool = False) -> VerificationReport:
    """
    Solve the flat problem for a boundary-data file

    Raises:
        UsageError: Missing or invalid input, or data degree above lmax - 2
        IllPosedTruncationError: Truncated system is numerically singular
    """
    seed = settings.SEED if seed is None else seed
    lmax = settings.LMAX if lmax is None else lmax
    logger.info(f"🚀 Starting flat solve for {input_path} at L={lmax}")
    checks, solves = _call(flat_solve_task, use_tasks, input_path, lmax, seed, profiles_path)
    return _report("flatbvp-solve", seed, config, checks, solves)


# Flows

@flow(name="symbols_verification", persist_result=False)
def symbols_verification_flow(config: Dict[str, Any], seed: Optional[int] = None,
                              golden_dir: Optional[str] = None,
                              certificate_dir: Optional[str] = None) -> VerificationReport:
    return run_symbols_suite(config, seed, golden_dir, certificate_dir, use_tasks=True)


@flow(name="adn_sweep", persist_result=False)
def adn_sweep_flow(config: Dict[str, Any], samples: int = 200, seed: Optional[int] = None) -> VerificationReport:
    return run_adn_suite(config, samples, seed, use_tasks=True)


@flow(name="geometry_verification", persist_result=False)
def geometry_verification_flow(config: Dict[str, Any], fixture_name: str, seed: Optional[int] = None,
                               m: Optional[float] = None, a: Optional[float] = None,
                               table_path: Optional[str] = None) -> VerificationReport:
    return run_geometry_suite(config, fixture_name, seed, m, a, table_path=table_path, use_tasks=True)


@flow(name="flatbvp_kernel", persist_result=False)
def flatbvp_kernel_flow(config: Dict[str, Any], lmax: Optional[int] = None,
                        seed: Optional[int] = None,
                        stability_levels: Optional[Sequence[int]] = None) -> VerificationReport:
    return run_flatbvp_kernel_suite(config, lmax, seed, use_tasks=True, stability_levels=stability_levels)


@flow(name="flatbvp_solve", persist_result=False)
def flatbvp_solve_flow(config: Dict[str, Any], input_path: str, lmax: Optional[int] = None,
                       seed: Optional[int] = None, profiles_path: Optional[str] = None) -> VerificationReport:
    return run_flatbvp_solve_suite(config, input_path, lmax, seed, profiles_path, use_tasks=True)


__all__ = [
    "exact_check",
    "check_from_dict",
    "symbol_certificates",
    "run_symbols_suite",
    "run_adn_suite",
    "run_geometry_suite",
    "STABILITY_LEVELS",
    "sigma_min_stability",
    "run_flatbvp_kernel_suite",
    "run_flatbvp_solve_suite",
    "symbols_verification_flow",
    "adn_sweep_flow",
    "geometry_verification_flow",
    "flatbvp_kernel_flow",
    "flatbvp_solve_flow",
]
