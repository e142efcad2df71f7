"""
Interior principal symbol of the gauged stationary vacuum operator

At leading order every one of the eleven unknowns sees the same scalar
wave-type symbol a(xi) = |xi|^2 - <X/N, xi>^2, so the symbol matrix is a*I.
"""

from dataclasses import dataclass

from symring import RationalExpr, SymMatrix, det_bareiss
from utils.profiler import time_function

UNKNOWNS = ("G", "h00", "h01", "h02", "h03", "h11", "h12", "h13", "h22", "h23", "h33")


@dataclass(frozen=True)
class InteriorSymbol:
    """Symbol matrix (11x11) and its scalar"""

    matrix: SymMatrix
    scalar_a: RationalExpr


def symbol_scalar(xi=("xi1", "xi2", "xi3")) -> RationalExpr:
    """a(xi) for the frequency indeterminates named in ``xi``"""
    x = [RationalExpr.var(name) for name in xi]
    X = [RationalExpr.var(name) for name in ("X1", "X2", "X3")]
    N = RationalExpr.var("N")
    shift_pairing = x[0] * X[0] + x[1] * X[1] + x[2] * X[2]
    return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - shift_pairing * shift_pairing / (N * N)


def build_interior_symbol() -> InteriorSymbol:
    """a(xi) * I_11"""
    a = symbol_scalar()
    return InteriorSymbol(matrix=SymMatrix.identity(len(UNKNOWNS), a), scalar_a=a)


@time_function
def interior_determinant(symbol: InteriorSymbol) -> RationalExpr:
    """det of the interior symbol matrix"""
    return det_bareiss(symbol.matrix)


__all__ = ["UNKNOWNS", "InteriorSymbol", "symbol_scalar", "build_interior_symbol", "interior_determinant"]
