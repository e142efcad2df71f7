"""
Coefficient table of the eleven scalar unknowns and its evaluation
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from flatbvp.assembly import COMPONENTS, ComponentFields
from flatbvp.harmonics import basis_table, mode_count, mode_labels
from reports.models import ModeCoefficient

COEFFICIENT_FLOOR = 1e-14


@dataclass
class LinearizedUnknowns:
    """c[component, (l, m)] for the decaying expansion of (h, Y, v, G)"""

    lmax: int
    coefficients: np.ndarray

    def __post_init__(self):
        self.coefficients = np.asarray(self.coefficients, dtype=float)
        expected = (len(COMPONENTS), mode_count(self.lmax))
        if self.coefficients.shape != expected:
            raise ValueError(f"coefficients must have shape {expected}, got {self.coefficients.shape}")

    @classmethod
    def zeros(cls, lmax: int) -> "LinearizedUnknowns":
        return cls(lmax=lmax, coefficients=np.zeros((len(COMPONENTS), mode_count(lmax))))

    @classmethod
    def from_vector(cls, lmax: int, vector: np.ndarray) -> "LinearizedUnknowns":
        """From a ModeSystem column-ordered vector"""
        return cls(lmax=lmax, coefficients=np.asarray(vector, dtype=float).reshape(len(COMPONENTS), -1))

    def vector(self) -> np.ndarray:
        return self.coefficients.ravel()

    def padded(self, lmax: int) -> "LinearizedUnknowns":
        """Same fields at a higher truncation"""
        if lmax < self.lmax:
            raise ValueError(f"cannot pad from L={self.lmax} down to L={lmax}")
        out = LinearizedUnknowns.zeros(lmax)
        out.coefficients[:, :mode_count(self.lmax)] = self.coefficients
        return out

    def fields(self, points: np.ndarray, strict: bool = True, with_hessian: bool = False) -> ComponentFields:
        """Evaluate every component at (N, 3) exterior points"""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        values, gradients, hessians = basis_table(self.lmax, points, strict, with_hessian)
        return ComponentFields(
            points=points,
            value=(self.coefficients @ values).T,
            gradient=np.einsum('ck,kna->nca', self.coefficients, gradients),
            hessian=None if hessians is None else np.einsum('ck,knab->ncab', self.coefficients, hessians),
        )

    def h4(self, x: np.ndarray) -> np.ndarray:
        """4x4 deformation at one point; accepts finite-difference stencils just inside r = 1"""
        return self.fields(np.asarray(x, dtype=float)[None], strict=False).h4()[0]

    def decay_exponents(self, floor: float = COEFFICIENT_FLOOR) -> Dict[str, int]:
        """Leading decay power l_min + 1 per nonzero component"""
        degrees = np.array([l for l, _ in mode_labels(self.lmax)])
        exponents = {}
        for name, row in zip(COMPONENTS, self.coefficients):
            active = np.abs(row) > floor
            if np.any(active):
                exponents[name] = int(degrees[active].min()) + 1
        return exponents

    def table(self) -> pd.DataFrame:
        labels = mode_labels(self.lmax)
        return pd.DataFrame(
            [(name, l, m, float(value))
             for name, row in zip(COMPONENTS, self.coefficients)
             for (l, m), value in zip(labels, row)],
            columns=["component", "l", "m", "value"],
        )

    def to_modes(self, floor: float = COEFFICIENT_FLOOR) -> List[ModeCoefficient]:
        frame = self.table()
        frame = frame[frame["value"].abs() > floor]
        return [
            ModeCoefficient(l=int(row.l), m=int(row.m), value=float(row.value), part=row.component)
            for row in frame.itertuples(index=False)
        ]

    def max_difference(self, other: "LinearizedUnknowns") -> float:
        """Max coefficient difference after padding both to the larger truncation"""
        lmax = max(self.lmax, other.lmax)
        return float(np.max(np.abs(self.padded(lmax).coefficients - other.padded(lmax).coefficients)))


def radial_profiles(unknowns: LinearizedUnknowns, components: Sequence[str] = COMPONENTS,
                    radii: Sequence[float] = tuple(np.linspace(1.0, 5.0, 41)),
                    direction: Sequence[float] = (0.0, 0.0, 1.0)) -> pd.DataFrame:
    """Long table (r, component, value) along one ray"""
    unknown = [c for c in components if c not in COMPONENTS]
    if unknown:
        raise ValueError(f"unknown components {unknown}; choose from {COMPONENTS}")
    direction = np.asarray(direction, dtype=float)
    direction = direction / np.linalg.norm(direction)
    radii = np.asarray(radii, dtype=float)
    values = unknowns.fields(radii[:, None] * direction).value
    rows = [
        (float(r), name, float(values[i, COMPONENTS.index(name)]))
        for i, r in enumerate(radii)
        for name in components
    ]
    return pd.DataFrame(rows, columns=["r", "component", "value"])


__all__ = ["COEFFICIENT_FLOOR", "LinearizedUnknowns", "radial_profiles"]
