"""
Complementing (Lopatinski-Shapiro) condition for the boundary symbol

The interior symbol is a*I_11, so its adjugate is a^10*I_11 and the condition
reduces to det B(eta + z mu) not vanishing modulo the upper-half-plane
factor of a. Numerically: det B~ at the root z_plus; symbolically: the
z-remainder of det B^ modulo a.
"""

from functools import lru_cache
from typing import Any, Dict, List, Optional

import numpy as np

from adn.ellipticity import proper_ellipticity_check
from adn.samples import CoefficientSample, draw_samples
from config.settings import settings
from symring import SymMatrix, evaluate, evaluate_matrix, serialize, substitute
from symbols.boundary import build_boundary_symbol
from symbols.determinants import (
    complementing_certificate,
    expected_certificate,
    homotopy_certificate,
)
from symbols.homotopy import certificate_value, expected_homotopy_certificate
from utils.errors import SymbolicError
from utils.logger import logger
from utils.profiler import time_function


@lru_cache(maxsize=None)
def _tilde() -> SymMatrix:
    return build_boundary_symbol().tilde


def closed_form_value(s: CoefficientSample) -> float:
    """-(1/(32 N^11)) * 8 N^8 |eta|^8 = -|eta|^8 / (4 N^3)"""
    return -s.eta_norm ** 8 / (4.0 * s.N ** 3)


def complementing_check_numeric(s: CoefficientSample, tilde: Optional[SymMatrix] = None) -> Dict[str, Any]:
    """
    Evaluate det B~(eta + z_plus mu) and compare with the closed form

    Args:
        s: Admissible coefficient sample
        tilde: Boundary block to test (defaults to the transcribed B~)

    Returns:
        {"det_value", "closed_form_value", "relative_error", "pass"}
    """
    roots = proper_ellipticity_check(s)
    matrix = evaluate_matrix(_tilde() if tilde is None else tilde, s.bindings(roots.z_plus))
    det = complex(np.linalg.det(matrix))
    expected = closed_form_value(s)
    relative_error = abs(det - expected) / abs(expected)
    passed = relative_error < settings.TOL_COMPLEMENTING and abs(det) > 0
    return {
        "det_value": det,
        "closed_form_value": expected,
        "relative_error": float(relative_error),
        "pass": bool(passed),
    }


@time_function
def complementing_sweep(count: int = 200, seed: Optional[int] = None) -> Dict[str, Any]:
    """
    Numeric complementing check over random admissible samples

    Returns:
        {"check_name", "samples", "worst_relative_error", "failures", "pass"}
    """
    seed = settings.SEED if seed is None else seed
    logger.info(f"🔍 Complementing sweep over {count} samples (seed {seed})")
    worst, failures = 0.0, 0
    for sample in draw_samples(count, seed):
        result = complementing_check_numeric(sample)
        worst = max(worst, result["relative_error"])
        failures += 0 if result["pass"] else 1
    if failures:
        logger.error(f"❌ {failures} samples failed, worst relative error {worst:.3e}")
    else:
        logger.info(f"✅ All {count} samples pass, worst relative error {worst:.3e}")
    return {
        "check_name": "complementing_numeric",
        "samples": count,
        "worst_relative_error": worst,
        "failures": failures,
        "pass": failures == 0,
    }


def ellipticity_sweep(count: int = 200, seed: Optional[int] = None) -> Dict[str, Any]:
    """Root-pair check over random admissible samples"""
    seed = settings.SEED if seed is None else seed
    worst = 0.0
    for sample in draw_samples(count, seed):
        roots = proper_ellipticity_check(sample)
        worst = max(worst, abs(roots.z_minus - roots.z_plus.conjugate()) / abs(roots.z_plus))
    return {
        "check_name": "proper_ellipticity",
        "samples": count,
        "worst_relative_error": float(worst),
        "pass": worst < settings.TOL_COMPLEMENTING,
    }


def complementing_check_symbolic() -> Dict[str, Any]:
    """
    Exact certificate: remainder of det B^(eta + z mu) modulo a(eta + z mu)

    Returns:
        {"pass", "certificate", "x_free", "matches_expected", "homotopy_certificate",
        "homotopy_matches_expected", "homotopy_grid_min"}
    """
    logger.info("📐 Building the complementing certificate")
    certificate = complementing_certificate()
    if not certificate.free_of("z"):
        raise SymbolicError(f"remainder depends on z: {serialize(certificate)}")

    nonzero = not certificate.is_zero()
    x_free = certificate.free_of("X1", "X2", "X3")
    matches = certificate == expected_certificate()

    flat = homotopy_certificate()
    flat_matches = flat == expected_homotopy_certificate()
    grid = [abs(certificate_value(t)) for t in np.linspace(0.0, 1.0, 11)]
    flat_at_unit = [
        abs(evaluate(flat, {"t": float(t), "xi2": 1.0, "xi3": 0.0})) / 32.0 for t in np.linspace(0.0, 1.0, 11)
    ]
    grid_ok = min(flat_at_unit) > 0 and np.allclose(flat_at_unit, grid, rtol=1e-12)

    passed = nonzero and x_free and matches and flat_matches and bool(grid_ok)
    if passed:
        logger.info(f"✅ Complementing certificate {serialize(certificate)}")
    else:
        logger.error(f"❌ Complementing certificate check failed: {serialize(certificate)}")
    return {
        "pass": passed,
        "certificate": serialize(certificate),
        "x_free": x_free,
        "matches_expected": matches,
        "homotopy_certificate": serialize(flat),
        "homotopy_matches_expected": flat_matches,
        "homotopy_grid_min": float(min(flat_at_unit)),
    }


def symbolic_numeric_agreement(count: int = 50, seed: Optional[int] = None) -> float:
    """
    Worst relative gap between the numeric det B~ at the root and the
    certificate evaluated at the same sample

    det B~ = -det B^ / (32 N^11), so the certificate is scaled accordingly.
    """
    seed = settings.SEED if seed is None else seed
    certificate = complementing_certificate()
    worst = 0.0
    for sample in draw_samples(count, seed):
        numeric = complementing_check_numeric(sample)["det_value"]
        bindings = {k: float(v) for k, v in sample.bindings(0.0).items() if k != "xi1"}
        exact = -evaluate(certificate, bindings) / (32.0 * sample.N ** 11)
        worst = max(worst, abs(numeric - exact) / abs(exact))
    return float(worst)


def certificate_at_zero_eta() -> bool:
    """True when the certificate vanishes for eta = 0"""
    return substitute(complementing_certificate(), {"xi2": 0, "xi3": 0}).is_zero()


__all__ = [
    "closed_form_value",
    "complementing_check_numeric",
    "complementing_sweep",
    "ellipticity_sweep",
    "complementing_check_symbolic",
    "symbolic_numeric_agreement",
    "certificate_at_zero_eta",
]
