"""
Product quadrature on the unit sphere

Gauss-Legendre in cos(polar angle) times uniform azimuth. With
degree // 2 + 1 Legendre nodes and degree + 1 azimuths the rule integrates
every polynomial of total degree <= degree exactly.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from scipy.special import roots_legendre


@dataclass(frozen=True)
class SphereGrid:
    """Quadrature nodes (N, 3) on |x| = 1 and weights (N,) summing to 4 pi"""

    points: np.ndarray
    weights: np.ndarray
    degree: int

    @property
    def size(self) -> int:
        return len(self.weights)

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Integral over the sphere of values sampled along axis 0"""
        return np.tensordot(self.weights, np.asarray(values, dtype=float), axes=(0, 0))


@lru_cache(maxsize=None)
def _product_nodes(degree: int) -> Tuple[np.ndarray, np.ndarray]:
    cos_polar, legendre_weights = roots_legendre(degree // 2 + 1)
    azimuth_count = degree + 1
    azimuth = 2.0 * np.pi * np.arange(azimuth_count) / azimuth_count
    sin_polar = np.sqrt(1.0 - cos_polar ** 2)
    points = np.stack([
        np.outer(sin_polar, np.cos(azimuth)).ravel(),
        np.outer(sin_polar, np.sin(azimuth)).ravel(),
        np.repeat(cos_polar, azimuth_count),
    ], axis=-1)
    weights = np.repeat(legendre_weights, azimuth_count) * (2.0 * np.pi / azimuth_count)
    return points, weights


def sphere_quadrature(degree: int, rotation: Optional[np.ndarray] = None) -> SphereGrid:
    """
    Exact rule for spherical polynomials up to ``degree``

    Args:
        degree: Largest total polynomial degree integrated exactly
        rotation: Optional 3x3 orthogonal matrix applied to every node
    """
    if degree < 0:
        raise ValueError(f"quadrature degree must be >= 0, got {degree}")
    points, weights = _product_nodes(int(degree))
    if rotation is not None:
        points = points @ np.asarray(rotation, dtype=float).T
    return SphereGrid(points=points.copy(), weights=weights.copy(), degree=int(degree))


__all__ = ["SphereGrid", "sphere_quadrature"]
