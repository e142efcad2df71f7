"""
Proper ellipticity of the interior symbol along tangential lines

a(eta + z mu) = z^2 + |eta|^2 - (X1 z + X2 eta1 + X3 eta2)^2 / N^2 is a real
quadratic in z with no real roots when |X| < N.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from adn.samples import CoefficientSample
from config.settings import settings
from utils.errors import RootFindingError


@dataclass(frozen=True)
class RootPair:
    """Roots of a(eta + z mu) in the upper and lower half-planes"""

    z_plus: complex
    z_minus: complex


def quadratic_coefficients(s: CoefficientSample) -> Tuple[float, float, float]:
    """(A, B, C) with a(eta + z mu) = A z^2 + B z + C"""
    T = s.X[1] * s.eta[0] + s.X[2] * s.eta[1]
    N2 = s.N * s.N
    return 1.0 - s.X[0] ** 2 / N2, -2.0 * s.X[0] * T / N2, s.eta_norm ** 2 - T * T / N2


def symbol_on_line(s: CoefficientSample, z: complex) -> complex:
    """a(eta + z mu)"""
    A, B, C = quadratic_coefficients(s)
    return A * z * z + B * z + C


def proper_ellipticity_check(s: CoefficientSample) -> RootPair:
    """
    Roots of a(eta + z mu), one in each half-plane

    Args:
        s: Admissible coefficient sample

    Returns:
        RootPair with Im(z_plus) > 0 and z_minus = conj(z_plus)
    """
    A, B, C = quadratic_coefficients(s)
    disc = B * B - 4.0 * A * C
    if disc >= 0:
        raise RootFindingError(f"real root found: discriminant {disc:.6g} >= 0")

    # stable form: q = -(B + sign(B) sqrt(disc)) / 2, roots q/A and C/q
    root = np.sqrt(complex(disc))
    q = -0.5 * (B + (1.0 if B >= 0 else -1.0) * root)
    first, second = q / A, C / q
    z_plus, z_minus = (first, second) if first.imag > 0 else (second, first)

    scale = max(s.eta_norm ** 2, 1.0)
    for z in (z_plus, z_minus):
        residual = abs(symbol_on_line(s, z)) / scale
        if residual > settings.ROOT_TOLERANCE:
            raise RootFindingError(f"|a(eta + z mu)| = {residual:.3e} at z = {z}")
    if not (z_plus.imag > 0 > z_minus.imag):
        raise RootFindingError(f"roots not split by the real axis: {z_plus}, {z_minus}")
    return RootPair(z_plus=complex(z_plus), z_minus=complex(z_minus))


__all__ = ["RootPair", "quadratic_coefficients", "symbol_on_line", "proper_ellipticity_check"]
