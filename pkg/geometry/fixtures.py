"""
Exact stationary vacuum fixtures

Minkowski exterior, static Schwarzschild in areal Cartesian form and Kerr in
Kerr-Schild form pulled back by the time translation with
f'(r) = 2 m r / (r^2 - 2 m r + a^2), which removes the dt dr cross term so
that kerr(m, 0) is the static Schwarzschild fixture.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from config.settings import settings
from geometry.metric import Metric4, ProjectionTriple, StationaryTriple, projection_to_stationary
from utils.errors import UsageError
from utils.logger import logger

FIXTURE_NAMES = ("minkowski_exterior", "schwarzschild", "kerr")


@dataclass(frozen=True)
class Fixture:
    """One exact spacetime with its three presentations and probe annulus"""

    name: str
    projection: ProjectionTriple
    stationary: StationaryTriple
    metric: Metric4
    mass: float
    spin: float

    @property
    def boundary_radius(self) -> float:
        return self.metric.boundary_radius

    @property
    def probe_annulus(self) -> Tuple[float, float]:
        """[max(1.1, 1.5 * 2m), max(5, inner + 4)]"""
        inner = max(1.1, 1.5 * 2.0 * self.mass)
        return inner, max(5.0, inner + 4.0)

    def probe_points(self, count: Optional[int] = None, seed: Optional[int] = None) -> List[np.ndarray]:
        return probe_points(self.probe_annulus, count, seed)


def probe_points(annulus: Tuple[float, float], count: Optional[int] = None,
                 seed: Optional[int] = None) -> List[np.ndarray]:
    """Seeded points with isotropic directions and radius uniform in the annulus"""
    count = settings.PROBE_COUNT if count is None else count
    rng = np.random.default_rng(settings.SEED if seed is None else seed)
    points = []
    for _ in range(count):
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        points.append(float(rng.uniform(*annulus)) * direction)
    return points


def sphere_points(radius: float, count: int, seed: Optional[int] = None) -> List[np.ndarray]:
    """Seeded points on the coordinate sphere |x| = radius"""
    rng = np.random.default_rng(settings.SEED if seed is None else seed)
    points = []
    for _ in range(count):
        direction = rng.normal(size=3)
        points.append(radius * direction / np.linalg.norm(direction))
    return points


# component functions

def minkowski_components(x: np.ndarray) -> np.ndarray:
    return np.diag([-1.0, 1.0, 1.0, 1.0])


def schwarzschild_components(x: np.ndarray, m: float) -> np.ndarray:
    """-(1 - 2m/r) dt^2 + dx^2 + 2m/(r - 2m) (n . dx)^2"""
    r = float(np.linalg.norm(x))
    n = x / r
    out = np.zeros((4, 4))
    out[0, 0] = -(1.0 - 2.0 * m / r)
    out[1:, 1:] = np.eye(3) + (2.0 * m / (r - 2.0 * m)) * np.outer(n, n)
    return out


def kerr_schild_radius(x: np.ndarray, a: float) -> float:
    """r with r^4 - (rho^2 - a^2) r^2 - a^2 z^2 = 0"""
    rho2 = float(x @ x)
    b = rho2 - a * a
    return float(np.sqrt(0.5 * (b + np.sqrt(b * b + 4.0 * a * a * x[2] ** 2))))


def kerr_components(x: np.ndarray, m: float, a: float) -> np.ndarray:
    """Kerr-Schild Kerr pulled back by (t, x) -> (t + f(x), x)"""
    r = kerr_schild_radius(x, a)
    X, Y, Z = x
    r2a2 = r * r + a * a
    H = 2.0 * m * r ** 3 / (r ** 4 + a * a * Z * Z)
    l = np.array([1.0, (r * X + a * Y) / r2a2, (r * Y - a * X) / r2a2, Z / r])
    g = np.diag([-1.0, 1.0, 1.0, 1.0]) + H * np.outer(l, l)

    # d r / d x^i from the defining quartic
    D = r * (2.0 * r * r - float(x @ x) + a * a)
    grad_r = np.array([r * r * X, r * r * Y, r2a2 * Z]) / D
    df = (2.0 * m * r / (r * r - 2.0 * m * r + a * a)) * grad_r
    return pull_back_components(g, df)


def pull_back_components(g: np.ndarray, df: np.ndarray) -> np.ndarray:
    """
    Components of Phi_f^* g for Phi_f(t, x) = (t + f(x), x)

    g^_00 = g_00, g^_0i = g_0i + g_00 f_i, g^_ij = g_ij + g_0i f_j + g_0j f_i + g_00 f_i f_j
    """
    out = g.copy()
    out[0, 1:] = g[0, 1:] + g[0, 0] * df
    out[1:, 0] = out[0, 1:]
    out[1:, 1:] = (
        g[1:, 1:]
        + np.outer(g[0, 1:], df)
        + np.outer(df, g[0, 1:])
        + g[0, 0] * np.outer(df, df)
    )
    return out


def fixture(name: str, m: Optional[float] = None, a: Optional[float] = None) -> Fixture:
    """
    Build a named fixture

    Args:
        name: One of minkowski_exterior, schwarzschild, kerr
        m: Mass (defaults to settings.KERR_MASS)
        a: Spin for kerr (defaults to settings.KERR_SPIN)

    Returns:
        Fixture with projection, stationary and 4-metric presentations

    Raises:
        UsageError: Unknown name or inadmissible parameters
    """
    if name == "minkowski":
        name = "minkowski_exterior"
    if name not in FIXTURE_NAMES:
        raise UsageError(f"unknown fixture {name!r}; expected one of {', '.join(FIXTURE_NAMES)}")

    if name == "minkowski_exterior":
        projection = ProjectionTriple(
            u=lambda x: 1.0,
            theta=lambda x: np.zeros(3),
            g_S=lambda x: np.eye(3),
        )
        metric = Metric4(name=name, components=minkowski_components, excluded_radius=0.0, boundary_radius=1.0)
        logger.debug("🌀 Built minkowski_exterior fixture")
        return Fixture(name, projection, projection_to_stationary(projection), metric, 0.0, 0.0)

    m = settings.KERR_MASS if m is None else float(m)
    if not m > 0:
        raise UsageError(f"mass must be positive, got {m}")

    if name == "schwarzschild":
        metric = Metric4(
            name=name,
            components=lambda x: schwarzschild_components(x, m),
            excluded_radius=2.0 * m,
            boundary_radius=3.0 * m,
        )
        projection = ProjectionTriple(
            u=lambda x: float(np.sqrt(1.0 - 2.0 * m / np.linalg.norm(x))),
            theta=lambda x: np.zeros(3),
            g_S=lambda x: metric.at(x)[1:, 1:],
        )
        logger.debug(f"🌀 Built schwarzschild fixture m={m}")
        return Fixture(name, projection, metric.stationary(), metric, m, 0.0)

    a = settings.KERR_SPIN if a is None else float(a)
    if abs(a) >= m:
        raise UsageError(f"kerr needs |a| < m, got a={a}, m={m}")
    metric = Metric4(
        name=name,
        components=lambda x: kerr_components(x, m, a),
        # r_KS^2 >= rho^2 - a^2 keeps rho > 2m + |a| outside the ergoregion
        excluded_radius=2.0 * m + abs(a),
        boundary_radius=3.0 * m,
    )
    logger.debug(f"🌀 Built kerr fixture m={m}, a={a}")
    return Fixture(name, metric.projection(), metric.stationary(), metric, m, a)


__all__ = [
    "FIXTURE_NAMES",
    "Fixture",
    "fixture",
    "probe_points",
    "sphere_points",
    "minkowski_components",
    "schwarzschild_components",
    "kerr_schild_radius",
    "kerr_components",
    "pull_back_components",
]
