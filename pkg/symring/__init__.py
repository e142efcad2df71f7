"""
Exact polynomial and rational-function engine for principal symbols
"""

from symring.ring import (
    INDETERMINATES,
    RING,
    Poly,
    coeffs_in,
    const,
    degree_in,
    evaluate_poly,
    free_of,
    gen,
    index_of,
    gens,
    make_ring,
    poly_arith,
)
from symring.rational import RationalExpr, evaluate, rem_in_z, substitute
from symring.matrix import SymMatrix, det_bareiss, det_cofactor, evaluate_matrix
from symring.serialize import golden_diff, matrix_entries, parse, read_golden, serialize, write_golden

__all__ = [
    "INDETERMINATES",
    "RING",
    "Poly",
    "coeffs_in",
    "const",
    "degree_in",
    "evaluate_poly",
    "free_of",
    "gen",
    "index_of",
    "gens",
    "make_ring",
    "poly_arith",
    "RationalExpr",
    "evaluate",
    "rem_in_z",
    "substitute",
    "SymMatrix",
    "det_bareiss",
    "det_cofactor",
    "evaluate_matrix",
    "serialize",
    "parse",
    "matrix_entries",
    "read_golden",
    "write_golden",
    "golden_diff",
]
