"""
Connection coefficients and Ricci tensor of a fixture metric
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional

import numpy as np

from config.settings import settings
from geometry.calculus import LeviCivita
from geometry.metric import Metric4
from utils.logger import logger
from utils.profiler import time_function


@dataclass(frozen=True)
class Curvature:
    """Gamma[l, m, n] = Gamma^l_mn and Ric[m, n] at one point"""

    christoffel: np.ndarray
    ricci: np.ndarray


def curvature(g: Metric4, x: np.ndarray) -> Curvature:
    """
    Gamma from first and Ric from second Richardson-extrapolated differences

    Raises:
        ExcludedRegionError: A stencil point falls inside the excluded ball
    """
    calculus = LeviCivita.of(g)
    return Curvature(christoffel=calculus.christoffel(x), ricci=calculus.ricci(x))


@time_function
def vacuum_residual(g: Metric4, points: Iterable[np.ndarray], tolerance: Optional[float] = None) -> Dict[str, Any]:
    """
    max |Ric_mn| over probe points

    Returns:
        {"check_name", "n_points", "max_error", "tolerance", "pass"}
    """
    tolerance = settings.TOL_VACUUM if tolerance is None else tolerance
    calculus = LeviCivita.of(g)
    worst, count = 0.0, 0
    for x in points:
        worst = max(worst, float(np.max(np.abs(calculus.ricci(x)))))
        count += 1
    passed = worst < tolerance
    if passed:
        logger.info(f"✅ {g.name}: max |Ric| = {worst:.3e} over {count} points")
    else:
        logger.warning(f"⚠️ {g.name}: max |Ric| = {worst:.3e} exceeds {tolerance:.1e}")
    return {
        "check_name": "vacuum_ricci",
        "n_points": count,
        "max_error": worst,
        "tolerance": tolerance,
        "pass": passed,
    }


__all__ = ["Curvature", "curvature", "vacuum_residual"]
