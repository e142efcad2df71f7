"""
Stationary 4-metrics and their two presentations

    g = -(N^2 - |X|^2) dt^2 + 2 X_i dt dx^i + g_ij dx^i dx^j      (lapse-shift)
    g = -u^2 (dt + theta)^2 + g_S                                 (projection)

Every field is a closed-form function of the spatial point x; d/dt = 0.
"""

from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Optional

import numpy as np

from config.settings import settings
from utils.errors import CausalityViolationError, DegenerateMetricError, ExcludedRegionError

ScalarField = Callable[[np.ndarray], float]
VectorField = Callable[[np.ndarray], np.ndarray]
TensorField = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class StationaryTriple:
    """(g, X, N): induced metric, shift vector (upper index) and lapse on the slice"""

    g: TensorField
    X: VectorField
    N: ScalarField

    def lowered_shift(self, x: np.ndarray) -> np.ndarray:
        return self.g(x) @ self.X(x)


@dataclass(frozen=True)
class ProjectionTriple:
    """(u, theta, g_S): orbit norm, connection 1-form and quotient metric"""

    u: ScalarField
    theta: VectorField
    g_S: TensorField


@dataclass(frozen=True)
class Metric4:
    """
    A t-independent Lorentzian metric given by its component function

    ``excluded_radius`` marks the ball where the components are not defined;
    ``boundary_radius`` is the coordinate sphere carrying Bartnik data.
    """

    name: str
    components: TensorField
    excluded_radius: float = 0.0
    boundary_radius: float = 1.0
    step: float = field(default_factory=lambda: settings.FD_STEP)
    levels: int = field(default_factory=lambda: settings.RICHARDSON_LEVELS)

    def at(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        radius = float(np.linalg.norm(x))
        if radius <= self.excluded_radius:
            raise ExcludedRegionError(
                f"{self.name}: |x| = {radius:.6g} inside excluded radius {self.excluded_radius:.6g}"
            )
        return np.asarray(self.components(x), dtype=float)

    def inverse(self, x: np.ndarray) -> np.ndarray:
        return np.linalg.inv(self.at(x))

    def with_stencil(self, step: Optional[float] = None, levels: Optional[int] = None) -> "Metric4":
        return replace(
            self,
            step=self.step if step is None else step,
            levels=self.levels if levels is None else levels,
        )

    def check_signature(self, x: np.ndarray) -> None:
        """Raise DegenerateMetricError unless the signature is (-,+,+,+) at x"""
        g = self.at(x)
        if not np.allclose(g, g.T, atol=1e-12):
            raise DegenerateMetricError(f"{self.name}: components not symmetric at {x}")
        eigenvalues = np.linalg.eigvalsh(g)
        if not (eigenvalues[0] < 0 < eigenvalues[1]):
            raise DegenerateMetricError(f"{self.name}: signature {eigenvalues} at {x}")

    # readbacks

    def spatial(self, x: np.ndarray) -> np.ndarray:
        return self.at(x)[1:, 1:]

    def stationary(self) -> StationaryTriple:
        """Lapse-shift data read back from the components"""

        def shift(x):
            g = self.at(x)
            return np.linalg.solve(g[1:, 1:], g[0, 1:])

        def lapse(x):
            g = self.at(x)
            X_low = g[0, 1:]
            return float(np.sqrt(-g[0, 0] + X_low @ np.linalg.solve(g[1:, 1:], X_low)))

        return StationaryTriple(g=self.spatial, X=shift, N=lapse)

    def projection(self) -> ProjectionTriple:
        """Projection data read back from the components"""

        def orbit_norm(x):
            g00 = self.at(x)[0, 0]
            if g00 >= 0:
                raise CausalityViolationError(f"{self.name}: g_tt = {g00:.6g} >= 0", point=x)
            return float(np.sqrt(-g00))

        def theta(x):
            g = self.at(x)
            return -g[0, 1:] / (-g[0, 0])

        def quotient_metric(x):
            g = self.at(x)
            u2 = -g[0, 0]
            th = -g[0, 1:] / u2
            return g[1:, 1:] + u2 * np.outer(th, th)

        return ProjectionTriple(u=orbit_norm, theta=theta, g_S=quotient_metric)


def _check_points(points: Optional[Iterable[np.ndarray]], predicate, message: str) -> None:
    for x in points or ():
        value = predicate(np.asarray(x, dtype=float))
        if value <= 0:
            raise CausalityViolationError(f"{message} ({value:.6g}) at {x}", point=x)


def assemble_adm(s: StationaryTriple, name: str = "adm", probe_points: Optional[Iterable] = None,
                 **metric_kwargs) -> Metric4:
    """
    g_00 = -N^2 + |X|^2, g_0i = X_i, g_ij = g_ij

    Raises:
        CausalityViolationError: N^2 <= |X|^2 at a probe point
    """

    def components(x):
        g = np.asarray(s.g(x), dtype=float)
        X = np.asarray(s.X(x), dtype=float)
        X_low = g @ X
        out = np.empty((4, 4))
        out[0, 0] = -s.N(x) ** 2 + X @ X_low
        out[0, 1:] = out[1:, 0] = X_low
        out[1:, 1:] = g
        return out

    def timelike_margin(x):
        X = np.asarray(s.X(x), dtype=float)
        return s.N(x) ** 2 - X @ np.asarray(s.g(x)) @ X

    _check_points(probe_points, timelike_margin, f"{name}: N^2 - |X|^2 not positive")
    return Metric4(name=name, components=components, **metric_kwargs)


def assemble_projection(p: ProjectionTriple, name: str = "projection", probe_points: Optional[Iterable] = None,
                        **metric_kwargs) -> Metric4:
    """
    Components of -u^2 (dt + theta)^2 + g_S

    Raises:
        CausalityViolationError: u <= 0 at a probe point
    """

    def components(x):
        u2 = p.u(x) ** 2
        th = np.asarray(p.theta(x), dtype=float)
        out = np.empty((4, 4))
        out[0, 0] = -u2
        out[0, 1:] = out[1:, 0] = -u2 * th
        out[1:, 1:] = np.asarray(p.g_S(x), dtype=float) - u2 * np.outer(th, th)
        return out

    _check_points(probe_points, p.u, f"{name}: orbit norm u not positive")
    return Metric4(name=name, components=components, **metric_kwargs)


def projection_to_stationary(p: ProjectionTriple) -> StationaryTriple:
    """g = g_S - u^2 theta^2, X_i = -u^2 theta_i, N^2 = u^2 + |X|^2"""

    def g(x):
        th = np.asarray(p.theta(x), dtype=float)
        return np.asarray(p.g_S(x), dtype=float) - p.u(x) ** 2 * np.outer(th, th)

    def X(x):
        return np.linalg.solve(g(x), -p.u(x) ** 2 * np.asarray(p.theta(x), dtype=float))

    def N(x):
        shift = X(x)
        return float(np.sqrt(p.u(x) ** 2 + shift @ g(x) @ shift))

    return StationaryTriple(g=g, X=X, N=N)


__all__ = [
    "ScalarField",
    "VectorField",
    "TensorField",
    "StationaryTriple",
    "ProjectionTriple",
    "Metric4",
    "assemble_adm",
    "assemble_projection",
    "projection_to_stationary",
]
