"""
Admissible coefficient samples (N, X, eta) for the ellipticity checks
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from utils.errors import InadmissibleSampleError


@dataclass(frozen=True)
class CoefficientSample:
    """Frozen coefficients at one boundary point plus a tangential covector"""

    N: float
    X: Tuple[float, float, float]
    eta: Tuple[float, float]

    def __post_init__(self):
        if not self.N > 0:
            raise InadmissibleSampleError(f"lapse must be positive, got N={self.N}")
        if float(np.linalg.norm(self.X)) >= self.N:
            raise InadmissibleSampleError(
                f"Killing field not time-like: |X|={np.linalg.norm(self.X):.6g} >= N={self.N:.6g}"
            )
        if float(np.linalg.norm(self.eta)) == 0.0:
            raise InadmissibleSampleError("tangential covector eta must be nonzero")

    @property
    def eta_norm(self) -> float:
        return float(np.hypot(*self.eta))

    def bindings(self, z: complex) -> Dict[str, complex]:
        """Values of the ring indeterminates at xi = eta + z mu"""
        return {
            "N": self.N,
            "X1": self.X[0],
            "X2": self.X[1],
            "X3": self.X[2],
            "xi1": z,
            "xi2": self.eta[0],
            "xi3": self.eta[1],
        }

    def scaled(self, factor: float) -> "CoefficientSample":
        """Same coefficients, eta multiplied by ``factor``"""
        return CoefficientSample(self.N, self.X, (self.eta[0] * factor, self.eta[1] * factor))


def draw_sample(rng: np.random.Generator) -> CoefficientSample:
    """
    One random admissible sample

    N ~ U[0.5, 2]; X uniform in the ball of radius 0.95 N; eta uniform in
    direction with log-uniform length in [0.1, 10].
    """
    N = float(rng.uniform(0.5, 2.0))
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    radius = 0.95 * N * float(rng.uniform()) ** (1.0 / 3.0)
    X = tuple(float(c) for c in radius * direction)
    angle = float(rng.uniform(0.0, 2.0 * np.pi))
    length = float(10.0 ** rng.uniform(-1.0, 1.0))
    eta = (length * np.cos(angle), length * np.sin(angle))
    return CoefficientSample(N, X, eta)


def draw_samples(count: int, seed: int) -> List[CoefficientSample]:
    """``count`` samples from one seeded generator"""
    rng = np.random.default_rng(seed)
    return [draw_sample(rng) for _ in range(count)]


__all__ = ["CoefficientSample", "draw_sample", "draw_samples"]
