"""
Replay of the elementary row/column reduction B~ -> B^

Each stage applies its operations to the previous matrix and the result is
compared entry by entry against the transcribed stage display. The first
differing entry aborts the replay with a ReplayMismatchError.
"""

from typing import Callable, Dict, List, Optional, Tuple

from symring import RationalExpr, SymMatrix, det_bareiss
from symbols.boundary import BoundarySymbol
from symbols.displays import reduction_displays
from utils.errors import ReplayMismatchError, SymbolicError
from utils.logger import logger
from utils.profiler import time_function

Operation = Callable[[SymMatrix], SymMatrix]


def row_factors() -> Tuple[RationalExpr, ...]:
    """
    Factors taking the rows of B~ to the rows of the stage-0 matrix

    Row i of B~ (B~ row order, prefactors still in place) is multiplied by
    factor i. These are not the per-row scalings of the displayed matrix;
    only their product, -32 N^11, is shared with that description.
    """
    N = RationalExpr.var("N")
    N2 = N * N
    return (RationalExpr.of(1), -N, -2 * N, -2 * N, -2 * N2, -2 * N2, -2 * N2, -N2)


def _row_add(target: int, source: int, factor) -> Operation:
    return lambda m: m.row_add(target, source, factor)


def _col_add(target: int, source: int, factor) -> Operation:
    return lambda m: m.col_add(target, source, factor)


def reduction_stages() -> List[List[Tuple[str, Operation]]]:
    """
    Elementary operations of stages 1..5 with a readable label each

    Rows and columns are 0-based here; labels use the 1-based R/C names.
    """
    N = RationalExpr.var("N")
    N2 = N * N
    X1, X2, X3 = (RationalExpr.var(f"X{k}") for k in (1, 2, 3))
    return [
        [
            ("R2 += -X1*R1", _row_add(1, 0, -X1)),
            ("R5 += 2N^2*R1", _row_add(4, 0, 2 * N2)),
        ],
        [
            ("R8 += -N^2*R2", _row_add(7, 1, -N2)),
        ],
        [
            ("C6 += N^2*C2", _col_add(5, 1, N2)),
            ("C3 += X1*C2", _col_add(2, 1, X1)),
            ("C4 += X2*C2", _col_add(3, 1, X2)),
            ("C5 += X3*C2", _col_add(4, 1, X3)),
        ],
        [
            ("C6 += X1*C3", _col_add(5, 2, X1)),
            ("C7 += X1*C4", _col_add(6, 3, X1)),
            ("C8 += X1*C5", _col_add(7, 4, X1)),
        ],
        [
            ("C3 += X1*C2", _col_add(2, 1, X1)),
            ("C4 += X2*C2", _col_add(3, 1, X2)),
            ("C5 += X3*C2", _col_add(4, 1, X3)),
            ("C3 += C1/(2N^2)", _col_add(2, 0, 1 / (2 * N2))),
            ("R2 += X1*R1", _row_add(1, 0, X1)),
        ],
    ]


def _compare(stage: int, actual: SymMatrix, expected: SymMatrix) -> None:
    mismatch = actual.first_mismatch(expected)
    if mismatch is None:
        return
    i, j = mismatch
    raise ReplayMismatchError(str(stage), i, j, expected[i, j], actual[i, j])


def replay(
    tilde: SymMatrix, displays: Optional[Dict[int, SymMatrix]] = None
) -> Dict[int, SymMatrix]:
    """
    Run the reduction and check every stage

    Args:
        tilde: The 8x8 block B~
        displays: Reference stages 0..5 (defaults to the transcribed ones)

    Returns:
        {stage: matrix} for stages 0..5
    """
    displays = reduction_displays() if displays is None else displays
    current = tilde
    for i, factor in enumerate(row_factors()):
        current = current.row_scale(i, factor)
    _compare(0, current, displays[0])
    stages = {0: current}
    for number, operations in enumerate(reduction_stages(), start=1):
        for label, apply in operations:
            current = apply(current)
            logger.debug(f"📐 stage {number}: {label}")
        _compare(number, current, displays[number])
        stages[number] = current
    return stages


def determinant_ratio(tilde: SymMatrix, bhat: SymMatrix) -> RationalExpr:
    """det B~ / det B^ computed by the engine"""
    det_hat = det_bareiss(bhat)
    if det_hat.is_zero():
        raise SymbolicError("reduced symbol is singular")
    return det_bareiss(tilde) / det_hat


def expected_ratio() -> RationalExpr:
    """-1/(32 N^11)"""
    N = RationalExpr.var("N")
    return RationalExpr.of(-1) / (32 * N ** 11)


@time_function
def reduce_to_bhat(b: BoundarySymbol, check_determinant: bool = True) -> SymMatrix:
    """
    Reduce the boundary block to B^ by replaying the five stages

    Args:
        b: Boundary symbol (its ``tilde`` block is reduced)
        check_determinant: Also require det B~ = -det B^ / (32 N^11) exactly

    Returns:
        The reduced matrix B^
    """
    logger.info("🔍 Replaying the boundary symbol reduction")
    bhat = replay(b.tilde)[5]
    if check_determinant:
        ratio = determinant_ratio(b.tilde, bhat)
        if not ratio == expected_ratio():
            raise SymbolicError(f"det B~ / det B^ = {ratio}, expected -1/(32 N^11)")
        logger.info("✅ det B~ = -det B^ / (32 N^11) holds exactly")
    return bhat


__all__ = [
    "row_factors",
    "reduction_stages",
    "replay",
    "determinant_ratio",
    "expected_ratio",
    "reduce_to_bhat",
]
