"""
Bartnik boundary data on a coordinate sphere and their behaviour under
boundary time translations

For the slice {t = 0} with lapse-shift data (g, X, N):

    K      = -(1 / 2N) L_X g
    gamma  = g restricted to the sphere
    H      = div_g n                      (n outward unit normal field)
    k      = tr_g K - K(n, n)
    tau(v) = K(n, v)

Tangent vectors are a fixed Euclidean-orthonormal pair (t1, t2) per point,
so data from two metrics at the same point are directly comparable.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional

import numpy as np

from config.settings import settings
from geometry.finite_difference import directional, partials
from geometry.fixtures import pull_back_components, sphere_points
from geometry.metric import Metric4
from utils.errors import DegenerateMetricError, GeometryError, TranslationTooLargeError
from utils.logger import logger
from utils.profiler import time_function

ScalarField = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class BartnikData:
    """(gamma, H, k, tau) at one boundary point in the (t1, t2) frame"""

    point: np.ndarray
    gamma: np.ndarray
    H: float
    k: float
    tau: np.ndarray

    def difference(self, other: "BartnikData") -> Dict[str, float]:
        return {
            "gamma": float(np.max(np.abs(self.gamma - other.gamma))),
            "H": abs(self.H - other.H),
            "k": abs(self.k - other.k),
            "tau": float(np.max(np.abs(self.tau - other.tau))),
        }


def tangent_frame(x: np.ndarray) -> np.ndarray:
    """Rows t1, t2: Euclidean-orthonormal tangents to the sphere through x"""
    e = x / np.linalg.norm(x)
    helper = np.array([0.0, 0.0, 1.0]) if abs(e[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    t1 = np.cross(helper, e)
    t1 /= np.linalg.norm(t1)
    return np.vstack([t1, np.cross(e, t1)])


class SliceGeometry:
    """Lapse, shift and second fundamental form of {t = 0} by finite differences"""

    def __init__(self, g: Metric4):
        self.g = g
        self.triple = g.stationary()

    def d(self, func, x):
        return partials(func, x, self.g.step, self.g.levels)

    def normal(self, x: np.ndarray) -> np.ndarray:
        """Outward g-unit normal to the level spheres of |x|, upper index"""
        g_inv = np.linalg.inv(self.triple.g(x))
        dr = x / np.linalg.norm(x)
        return g_inv @ dr / np.sqrt(dr @ g_inv @ dr)

    def mean_curvature(self, x: np.ndarray) -> float:
        """div_g n = (1 / sqrt det g) d_i (sqrt det g n^i)"""
        density = lambda p: np.sqrt(np.linalg.det(self.triple.g(p))) * self.normal(p)
        return float(np.trace(self.d(density, x))) / float(np.sqrt(np.linalg.det(self.triple.g(x))))

    def second_fundamental_form(self, x: np.ndarray) -> np.ndarray:
        """K = -(1 / 2N) (X^k d_k g_ij + g_kj d_i X^k + g_ik d_j X^k)"""
        gx = self.triple.g(x)
        X = self.triple.X(x)
        dX = self.d(self.triple.X, x)
        lie = (
            np.einsum('k,kij->ij', X, self.d(self.triple.g, x))
            + np.einsum('kj,ik->ij', gx, dX)
            + np.einsum('ik,jk->ij', gx, dX)
        )
        return -lie / (2.0 * self.triple.N(x))

    def data(self, x: np.ndarray) -> BartnikData:
        gx = self.triple.g(x)
        if np.linalg.eigvalsh(gx)[0] <= 0:
            raise DegenerateMetricError(f"{self.g.name}: induced metric not Riemannian at {x}")
        frame = tangent_frame(x)
        gamma = frame @ gx @ frame.T
        if np.linalg.eigvalsh(gamma)[0] <= 0:
            raise DegenerateMetricError(f"{self.g.name}: induced boundary metric degenerate at {x}")
        K = self.second_fundamental_form(x)
        n = self.normal(x)
        k = float(np.einsum('ij,ij', np.linalg.inv(gx), K) - n @ K @ n)
        return BartnikData(point=x, gamma=gamma, H=self.mean_curvature(x), k=k, tau=frame @ (K @ n))


def bartnik_data(g: Metric4, x: np.ndarray) -> BartnikData:
    """
    Bartnik data of g at a point x of its boundary sphere

    Raises:
        DegenerateMetricError: Induced metric not Riemannian at x
    """
    return SliceGeometry(g).data(np.asarray(x, dtype=float))


def boundary_points(g: Metric4, count: int, seed: Optional[int] = None) -> List[np.ndarray]:
    return sphere_points(g.boundary_radius, count, seed)


# time translations

@dataclass(frozen=True)
class TimeTranslation:
    """Phi_f(t, x) = (t + f(x), x) applied to a metric"""

    base: Metric4
    f: ScalarField
    pulled: Metric4

    def normal_derivative(self, x: np.ndarray) -> float:
        """n(f) with n the outward g-unit normal"""
        slice_geometry = SliceGeometry(self.base)
        df = partials(self.f, x, self.base.step, self.base.levels)
        return float(slice_geometry.normal(x) @ df)

    def _terms(self, x: np.ndarray):
        triple = self.base.stationary()
        nf = self.normal_derivative(x)
        n = SliceGeometry(self.base).normal(x)
        X_n = float(triple.lowered_shift(x) @ n)
        N = triple.N(x)
        numerator = 1.0 + X_n * nf
        radicand = numerator ** 2 - N ** 2 * nf ** 2
        if radicand <= 0:
            raise TranslationTooLargeError(
                f"(1 + <X,n> n(f))^2 - N^2 n(f)^2 = {radicand:.6g} <= 0 at {x}"
            )
        return numerator, N * nf, float(np.sqrt(radicand))

    def a(self, x: np.ndarray) -> float:
        numerator, _, root = self._terms(x)
        return numerator / root

    def b(self, x: np.ndarray) -> float:
        _, normal_part, root = self._terms(x)
        return normal_part / root

    def ratio(self, x: np.ndarray) -> float:
        """b / a = N n(f) / (1 + <X, n> n(f)), defined off the sphere too"""
        numerator, normal_part, _ = self._terms(x)
        return normal_part / numerator


def time_translate(g: Metric4, f: ScalarField, check_points: int = 16) -> TimeTranslation:
    """
    Pull g back by Phi_f

    Args:
        g: Stationary metric with a boundary sphere
        f: t-independent function vanishing on the boundary sphere
        check_points: Boundary samples used to check f = 0 there

    Raises:
        GeometryError: f does not vanish on the boundary sphere
    """
    for x in boundary_points(g, check_points, seed=0):
        if abs(f(x)) > 1e-12:
            raise GeometryError(f"translation function must vanish on the boundary, f = {f(x):.3e} at {x}")

    def components(x):
        df = partials(f, x, g.step, g.levels)
        return pull_back_components(g.at(x), df)

    pulled = Metric4(
        name=f"{g.name}_translated",
        components=components,
        excluded_radius=g.excluded_radius,
        boundary_radius=g.boundary_radius,
        step=g.step,
        levels=g.levels,
    )
    return TimeTranslation(base=g, f=f, pulled=pulled)


@time_function
def verify_transformation_laws(g: Metric4, f: ScalarField, count: int = 12,
                               seed: Optional[int] = None) -> Dict[str, Any]:
    """
    Compare directly computed data of Phi_f^* g with the transformation laws

        H^ = b k + a H,  k^ = a k + b H,  tau^ = a^2 d(b/a) + tau,  gamma^ = gamma

    Returns:
        {"n_points", "gamma", "H", "k", "tau", "a2_minus_b2", "max_error"}
    """
    translation = time_translate(g, f)
    residuals = {"gamma": 0.0, "H": 0.0, "k": 0.0, "tau": 0.0, "a2_minus_b2": 0.0}
    points = boundary_points(g, count, seed)
    for x in points:
        before = bartnik_data(g, x)
        after = bartnik_data(translation.pulled, x)
        a, b = translation.a(x), translation.b(x)
        frame = tangent_frame(x)
        d_ratio = np.array([
            float(directional(translation.ratio, x, t, g.step, g.levels)) for t in frame
        ])
        residuals["gamma"] = max(residuals["gamma"], float(np.max(np.abs(after.gamma - before.gamma))))
        residuals["H"] = max(residuals["H"], abs(after.H - (b * before.k + a * before.H)))
        residuals["k"] = max(residuals["k"], abs(after.k - (a * before.k + b * before.H)))
        residuals["tau"] = max(
            residuals["tau"], float(np.max(np.abs(after.tau - (a * a * d_ratio + before.tau))))
        )
        residuals["a2_minus_b2"] = max(residuals["a2_minus_b2"], abs(a * a - b * b - 1.0))
    max_error = max(residuals.values())
    logger.info(f"🌀 Transformation laws on {g.name}: max residual {max_error:.3e}")
    return {"n_points": len(points), **residuals, "max_error": max_error}


@time_function
def verify_translation_invariance(g: Metric4, f: ScalarField, count: int = 12,
                                  seed: Optional[int] = None) -> Dict[str, Any]:
    """Bartnik data before and after a translation with f = n(f) = 0 on the boundary"""
    translation = time_translate(g, f)
    worst = 0.0
    points = boundary_points(g, count, seed)
    for x in points:
        diff = bartnik_data(g, x).difference(bartnik_data(translation.pulled, x))
        worst = max(worst, *diff.values())
    tolerance = settings.TOL_INVARIANCE
    return {"check_name": "bartnik_invariance", "n_points": len(points), "max_error": worst,
            "tolerance": tolerance, "pass": worst < tolerance}


def translation_group_membership(g: Metric4, f: ScalarField, count: int = 24,
                                 seed: Optional[int] = None, tolerance: float = 1e-8) -> Dict[str, Any]:
    """
    Decide whether Phi_f fixes the boundary and the unit normal N there

    Membership means f = 0 and n(f) = 0 on the boundary sphere; the answer is
    computed with the g-normal and with the Euclidean normal and must agree.

    Returns:
        {"max_f", "max_normal_derivative", "max_normal_derivative_euclidean",
         "max_df", "member", "member_euclidean", "metric_independent"}
    """
    slice_geometry = SliceGeometry(g)
    max_f = max_nf = max_nf_flat = max_df = 0.0
    for x in boundary_points(g, count, seed):
        df = partials(f, x, g.step, g.levels)
        max_f = max(max_f, abs(f(x)))
        max_nf = max(max_nf, abs(float(slice_geometry.normal(x) @ df)))
        max_nf_flat = max(max_nf_flat, abs(float(x @ df) / np.linalg.norm(x)))
        max_df = max(max_df, float(np.linalg.norm(df)))
    member = max_f < tolerance and max_nf < tolerance
    member_flat = max_f < tolerance and max_nf_flat < tolerance
    return {
        "max_f": max_f,
        "max_normal_derivative": max_nf,
        "max_normal_derivative_euclidean": max_nf_flat,
        "max_df": max_df,
        "member": member,
        "member_euclidean": member_flat,
        "metric_independent": member == member_flat,
    }


__all__ = [
    "BartnikData",
    "tangent_frame",
    "SliceGeometry",
    "bartnik_data",
    "boundary_points",
    "TimeTranslation",
    "time_translate",
    "verify_transformation_laws",
    "verify_translation_invariance",
    "translation_group_membership",
]
