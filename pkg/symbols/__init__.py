"""
Principal symbols of the gauged Bartnik boundary value problem
"""

from symbols.interior import UNKNOWNS, InteriorSymbol, build_interior_symbol, interior_determinant, symbol_scalar
from symbols.boundary import BoundarySymbol, build_boundary_symbol, display_consistency
from symbols.reduction import reduce_to_bhat
from symbols.homotopy import HomotopySymbol, build_homotopy_symbol
from symbols.determinants import complementing_certificate, det_bhat_closed_form

__all__ = [
    "UNKNOWNS",
    "InteriorSymbol",
    "build_interior_symbol",
    "interior_determinant",
    "symbol_scalar",
    "BoundarySymbol",
    "build_boundary_symbol",
    "display_consistency",
    "reduce_to_bhat",
    "HomotopySymbol",
    "build_homotopy_symbol",
    "complementing_certificate",
    "det_bhat_closed_form",
]
