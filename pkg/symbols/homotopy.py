"""
Flat homotopy family of boundary symbols, t in [0, 1]

At t = 0 the family is the flat (X = 0, N = 1) Bartnik + gauge symbol up to
fixed row factors; at t = 1 it is the symbol of the modified boundary
operator. Determinants carry the scalar factor -1/32.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from symring import RationalExpr, SymMatrix, det_bareiss, substitute
from symbols.boundary import displayed_tilde
from symbols.displays import homotopy_display

FLAT_POINT = {"N": 1, "X1": 0, "X2": 0, "X3": 0}


@dataclass(frozen=True)
class HomotopySymbol:
    """D_t with det B_t = prefactor * det D_t"""

    matrix: SymMatrix
    prefactor: Fraction = Fraction(-1, 32)
    # D_0 = diag(row_scaling) * B~ at the flat point
    row_scaling: Tuple[int, ...] = (1, -1, -2, -2, -2, -2, -2, -1)

    def at(self, t) -> SymMatrix:
        """Exact member of the family at parameter t"""
        return self.matrix.subs({"t": t})

    def determinant(self) -> RationalExpr:
        """det B_t as an exact expression in (xi, t)"""
        return det_bareiss(self.matrix) * self.prefactor


def build_homotopy_symbol() -> HomotopySymbol:
    """The transcribed family in (xi1, xi2, xi3, t)"""
    return HomotopySymbol(matrix=homotopy_display())


def flat_tilde() -> SymMatrix:
    """B~ with (X, N) = (0, 1)"""
    return displayed_tilde().subs(FLAT_POINT)


def matches_flat_boundary(h: HomotopySymbol) -> bool:
    """True when D_0 = diag(row_scaling) * flat B~ entrywise"""
    flat = flat_tilde()
    for i, factor in enumerate(h.row_scaling):
        flat = flat.row_scale(i, factor)
    return h.at(0) == flat


def expected_homotopy_determinant() -> RationalExpr:
    """
    det D_t in closed form

    [(2+t)(1-t)^2 xi1^2 |eta|^2 - t xi1^4] * [2(2+t)(1-t)^2 |eta|^2 xi1^2 - 4t xi1^4]
    """
    xi1, xi2, xi3, t = (RationalExpr.var(n) for n in ("xi1", "xi2", "xi3", "t"))
    eta2 = xi2 * xi2 + xi3 * xi3
    s2 = (1 - t) * (1 - t)
    q = xi1 * xi1
    return ((2 + t) * s2 * q * eta2 - t * q * q) * (2 * (2 + t) * s2 * eta2 * q - 4 * t * q * q)


def expected_homotopy_certificate() -> RationalExpr:
    """Remainder of det D_t at xi1 = z modulo z^2 + |eta|^2"""
    xi2, xi3, t = (RationalExpr.var(n) for n in ("xi2", "xi3", "t"))
    eta2 = xi2 * xi2 + xi3 * xi3
    s2 = (1 - t) * (1 - t)
    return eta2 ** 4 * (t + (2 + t) * s2) * (2 * (2 + t) * s2 + 4 * t)


def certificate_value(t: float, eta_norm: float = 1.0) -> float:
    """-(1/32) [t + (2+t)(1-t)^2] [2(2+t)(1-t)^2 + 4t] |eta|^8"""
    s2 = (1.0 - t) ** 2
    return -(t + (2.0 + t) * s2) * (2.0 * (2.0 + t) * s2 + 4.0 * t) * eta_norm ** 8 / 32.0


__all__ = [
    "FLAT_POINT",
    "HomotopySymbol",
    "build_homotopy_symbol",
    "flat_tilde",
    "matches_flat_boundary",
    "expected_homotopy_determinant",
    "expected_homotopy_certificate",
    "certificate_value",
]
