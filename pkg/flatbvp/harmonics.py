"""
Real spherical harmonics and the decaying solid-harmonic basis

R_lm(x) is the regular solid harmonic: an associated-Legendre factor in
(z, |x|^2) built by recurrence, times Re (x + iy)^m for m >= 0 or
Im (x + iy)^|m| for m < 0, scaled so that Y_lm = R_lm on |x| = 1 is
orthonormal. The decaying basis element is the Kelvin transform

    u_lm = R_lm |x|^-(2l+1) = r^-(l+1) Y_lm
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

import numpy as np
import sympy as sp

from flatbvp.quadrature import SphereGrid, sphere_quadrature
from utils.errors import DomainError

# Finite-difference stencils around r = 1 may dip this far inside
STENCIL_MARGIN = 0.01
RADIUS_SLACK = 1e-12

_X, _Y, _Z = sp.symbols("x y z", real=True)
_VARS = (_X, _Y, _Z)


def harmonic_index(l: int, m: int) -> int:
    """Position of (l, m) in the degree-major ordering"""
    return l * l + l + m


def mode_count(lmax: int) -> int:
    return (lmax + 1) ** 2


def mode_labels(lmax: int) -> List[Tuple[int, int]]:
    return [(l, m) for l in range(lmax + 1) for m in range(-l, l + 1)]


def _legendre_factor(l: int, m: int) -> sp.Expr:
    """Pi_l^m with Pi_m^m = 1, unnormalized"""
    r2 = _X ** 2 + _Y ** 2 + _Z ** 2
    previous, current = sp.Integer(0), sp.Integer(1)
    for k in range(m + 1, l + 1):
        previous, current = current, sp.expand(
            ((2 * k - 1) * _Z * current - (k + m - 1) * r2 * previous) / (k - m)
        )
    return current


def _azimuthal_factor(m: int) -> sp.Expr:
    real, imag = sp.Integer(1), sp.Integer(0)
    for _ in range(abs(m)):
        real, imag = sp.expand(_X * real - _Y * imag), sp.expand(_X * imag + _Y * real)
    return real if m >= 0 else imag


def _vectorized(exprs: List[sp.Expr]) -> Callable[[np.ndarray], np.ndarray]:
    """Lambdified list of expressions evaluated on (..., 3) points -> (..., len(exprs))"""
    func = sp.lambdify(_VARS, exprs, modules="numpy")

    def evaluate(points: np.ndarray) -> np.ndarray:
        x, y, z = points[..., 0], points[..., 1], points[..., 2]
        return np.stack(
            [np.broadcast_to(np.asarray(v, dtype=float), x.shape) for v in func(x, y, z)], axis=-1
        )

    return evaluate


@dataclass(frozen=True)
class SolidHarmonic:
    """Normalized R_lm with its gradient and Hessian"""

    l: int
    m: int
    scale: float
    polynomial: sp.Expr
    _value: Callable[[np.ndarray], np.ndarray]
    _gradient: Callable[[np.ndarray], np.ndarray]
    _hessian: Callable[[np.ndarray], np.ndarray]

    def evaluate(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(R, grad R, Hess R) at (..., 3) points"""
        points = np.asarray(points, dtype=float)
        value = self._value(points)[..., 0] * self.scale
        gradient = self._gradient(points) * self.scale
        hessian = self._hessian(points).reshape(points.shape[:-1] + (3, 3)) * self.scale
        return value, gradient, hessian

    def value(self, points: np.ndarray) -> np.ndarray:
        return self._value(np.asarray(points, dtype=float))[..., 0] * self.scale


@lru_cache(maxsize=None)
def solid_harmonic(l: int, m: int) -> SolidHarmonic:
    if l < 0 or abs(m) > l:
        raise ValueError(f"need l >= 0 and |m| <= l, got (l, m) = ({l}, {m})")
    polynomial = sp.expand(_legendre_factor(l, abs(m)) * _azimuthal_factor(m))
    gradient = [sp.diff(polynomial, var) for var in _VARS]
    hessian = [sp.diff(component, var) for component in gradient for var in _VARS]
    value_func = _vectorized([polynomial])

    grid = sphere_quadrature(2 * l)
    raw = value_func(grid.points)[..., 0]
    scale = 1.0 / float(np.sqrt(grid.integrate(raw ** 2)))
    return SolidHarmonic(
        l=l, m=m, scale=scale, polynomial=polynomial,
        _value=value_func, _gradient=_vectorized(gradient), _hessian=_vectorized(hessian),
    )


def _check_domain(r: np.ndarray, strict: bool) -> None:
    lower = 1.0 if strict else 1.0 - STENCIL_MARGIN
    if np.any(r < lower - RADIUS_SLACK):
        raise DomainError(f"decaying harmonics live on r >= 1, got r = {float(np.min(r)):.6g}")


def basis_eval(l: int, m: int, x: np.ndarray, strict: bool = True) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Value, gradient and Hessian of u_lm = r^-(l+1) Y_lm

    Args:
        l, m: Degree and order
        x: Point(s), shape (..., 3), with |x| >= 1
        strict: If False, accept |x| >= 1 - STENCIL_MARGIN (finite-difference stencils)

    Returns:
        (value (...), gradient (..., 3), Hessian (..., 3, 3))

    Raises:
        DomainError: If a point lies inside the unit ball
    """
    points = np.asarray(x, dtype=float)
    r = np.linalg.norm(points, axis=-1)
    _check_domain(r, strict)
    R, gR, HR = solid_harmonic(l, m).evaluate(points)
    p = 2 * l + 1
    s0 = r ** -p
    s1 = r ** -(p + 2)
    s2 = r ** -(p + 4)
    value = R * s0
    gradient = s0[..., None] * gR - p * (R * s1)[..., None] * points
    cross = gR[..., :, None] * points[..., None, :]
    radial = points[..., :, None] * points[..., None, :]
    hessian = (
        s0[..., None, None] * HR
        - p * s1[..., None, None] * (cross + np.swapaxes(cross, -1, -2))
        + R[..., None, None] * (p * (p + 2) * s2[..., None, None] * radial - p * s1[..., None, None] * np.eye(3))
    )
    return value, gradient, hessian


def basis_table(lmax: int, points: np.ndarray, strict: bool = True,
                with_hessian: bool = False) -> Tuple[np.ndarray, np.ndarray, Optional[np.ndarray]]:
    """
    Every u_lm with l <= lmax at (N, 3) points

    Returns:
        values (K, N), gradients (K, N, 3) and Hessians (K, N, 3, 3) or None,
        K = (lmax + 1)^2 in ``mode_labels`` order
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    rows = [basis_eval(l, m, points, strict) for l, m in mode_labels(lmax)]
    values = np.stack([row[0] for row in rows])
    gradients = np.stack([row[1] for row in rows])
    hessians = np.stack([row[2] for row in rows]) if with_hessian else None
    return values, gradients, hessians


def sphere_values(lmax: int, points: np.ndarray) -> np.ndarray:
    """Y_lm at directions of (N, 3) points, shape (K, N)"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    directions = points / np.linalg.norm(points, axis=-1, keepdims=True)
    return np.stack([solid_harmonic(l, m).value(directions) for l, m in mode_labels(lmax)])


def project(grid: SphereGrid, values: np.ndarray, lmax: int) -> np.ndarray:
    """
    Coefficients on Y_lm, l <= lmax, of values sampled on the grid

    values has shape (N,) or (N, C); the result is (K,) or (K, C)
    """
    weighted = sphere_values(lmax, grid.points) * grid.weights
    return weighted @ np.asarray(values, dtype=float)


__all__ = [
    "STENCIL_MARGIN",
    "harmonic_index",
    "mode_count",
    "mode_labels",
    "SolidHarmonic",
    "solid_harmonic",
    "basis_eval",
    "basis_table",
    "sphere_values",
    "project",
]
