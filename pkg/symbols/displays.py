"""
Reference matrices transcribed entry by entry

Column order of every 8x8 matrix: (G, h00, h01, h02, h03, h11, h12, h13).
Row order: (H', trK', w'2, w'3, beta1, beta2, beta3, beta0).

* ``boundary_display``  -- the boundary symbol with the -1/(2N^2) factor pulled out
* ``reduction_displays`` -- the row-rescaled matrix and the five stages of the
  elementary-operation reduction, the last one being the reduced symbol
* ``homotopy_display``  -- the flat homotopy family, up to the factor -1/32
"""

from functools import lru_cache
from typing import Dict, List

from symring import RationalExpr, SymMatrix

ROW_LABELS = ("H'", "trK'", "w'2", "w'3", "beta1", "beta2", "beta3", "beta0")
COLUMN_LABELS = ("G", "h00", "h01", "h02", "h03", "h11", "h12", "h13")


def _symbols():
    v = {name: RationalExpr.var(name) for name in ("xi1", "xi2", "xi3", "N", "X1", "X2", "X3", "t")}
    v["S"] = v["xi1"] * v["X1"] + v["xi2"] * v["X2"] + v["xi3"] * v["X3"]
    return v


@lru_cache(maxsize=None)
def boundary_display() -> SymMatrix:
    """Boundary symbol times -2N^2"""
    v = _symbols()
    x1, x2, x3, N, X1, X2, X3, S = (v[k] for k in ("xi1", "xi2", "xi3", "N", "X1", "X2", "X3", "S"))
    N2 = N * N
    return SymMatrix([
        [0, 0, 0, 0, 0, 0, 2 * N2 * x2, 2 * N2 * x3],
        [0, 0, 0, 2 * N * x2, 2 * N * x3, 0, -2 * N * x2 * X1, -2 * N * x3 * X1],
        [-2 * N2 * N * x2, 0, N * x2, N * x1, 0, -N * x2 * X1, N * x3 * X3, -N * x2 * X3],
        [-2 * N2 * N * x3, 0, N * x3, 0, N * x1, -N * x3 * X1, -N * x3 * X2, N * x2 * X2],
        [0, x1, 2 * S - 2 * x1 * X1, -2 * x1 * X2, -2 * x1 * X3,
         x1 * X1 * X1 + N2 * x1 - 2 * S * X1,
         x1 * X1 * X2 - 2 * S * X2 + 2 * N2 * x2,
         x1 * X1 * X3 - 2 * S * X3 + 2 * N2 * x3],
        [0, x2, -2 * x2 * X1, 2 * S - 2 * x2 * X2, -2 * x2 * X3,
         x2 * X1 * X1 - N2 * x2,
         x2 * X1 * X2 - 2 * S * X1 + 2 * N2 * x1,
         x2 * X1 * X3],
        [0, x3, -2 * x3 * X1, -2 * x3 * X2, 2 * S - 2 * x3 * X3,
         x3 * X1 * X1 - N2 * x3,
         x3 * X1 * X2,
         x3 * X1 * X3 - 2 * S * X1 + 2 * N2 * x1],
        [0, 2 * S, 2 * (N2 * x1 - S * X1), 2 * (N2 * x2 - S * X2), 2 * (N2 * x3 - S * X3), 0, 0, 0],
    ])


@lru_cache(maxsize=None)
def reduction_displays() -> Dict[int, SymMatrix]:
    """
    Stage 0 (row-rescaled symbol) through stage 5 (reduced symbol)

    Rows not listed for a stage are unchanged from the previous stage.
    """
    v = _symbols()
    x1, x2, x3, N, X1, X2, X3, S = (v[k] for k in ("xi1", "xi2", "xi3", "N", "X1", "X2", "X3", "S"))
    N2 = N * N

    stage0: List[list] = [
        [0, 0, 0, 0, 0, 0, -x2, -x3],
        [0, 0, 0, x2, x3, 0, -x2 * X1, -x3 * X1],
        [-2 * N2 * x2, 0, x2, x1, 0, -x2 * X1, x3 * X3, -x2 * X3],
        [-2 * N2 * x3, 0, x3, 0, x1, -x3 * X1, -x3 * X2, x2 * X2],
        [0, x1, 2 * S - 2 * x1 * X1, -2 * x1 * X2, -2 * x1 * X3,
         x1 * X1 * X1 + N2 * x1 - 2 * S * X1,
         x1 * X1 * X2 - 2 * S * X2 + 2 * N2 * x2,
         x1 * X1 * X3 - 2 * S * X3 + 2 * N2 * x3],
        [0, x2, -2 * x2 * X1, 2 * S - 2 * x2 * X2, -2 * x2 * X3,
         x2 * X1 * X1 - N2 * x2,
         x2 * X1 * X2 - 2 * S * X1 + 2 * N2 * x1,
         x2 * X1 * X3],
        [0, x3, -2 * x3 * X1, -2 * x3 * X2, 2 * S - 2 * x3 * X3,
         x3 * X1 * X1 - N2 * x3,
         x3 * X1 * X2,
         x3 * X1 * X3 - 2 * S * X1 + 2 * N2 * x1],
        [0, S, N2 * x1 - S * X1, N2 * x2 - S * X2, N2 * x3 - S * X3, 0, 0, 0],
    ]

    stage1 = [list(r) for r in stage0]
    stage1[1] = [0, 0, 0, x2, x3, 0, 0, 0]
    stage1[4] = [0, x1, 2 * S - 2 * x1 * X1, -2 * x1 * X2, -2 * x1 * X3,
                 x1 * X1 * X1 + N2 * x1 - 2 * S * X1,
                 x1 * X1 * X2 - 2 * S * X2,
                 x1 * X1 * X3 - 2 * S * X3]

    stage2 = [list(r) for r in stage1]
    stage2[7] = [0, S, N2 * x1 - S * X1, -S * X2, -S * X3, 0, 0, 0]

    stage3 = [list(r) for r in stage2]
    stage3[4] = [0, x1, 2 * S - x1 * X1, -x1 * X2, -x1 * X3,
                 x1 * X1 * X1 + 2 * N2 * x1 - 2 * S * X1,
                 x1 * X1 * X2 - 2 * S * X2,
                 x1 * X1 * X3 - 2 * S * X3]
    stage3[5] = [0, x2, -x2 * X1, 2 * S - x2 * X2, -x2 * X3,
                 x2 * X1 * X1,
                 x2 * X1 * X2 - 2 * S * X1 + 2 * N2 * x1,
                 x2 * X1 * X3]
    stage3[6] = [0, x3, -x3 * X1, -x3 * X2, 2 * S - x3 * X3,
                 x3 * X1 * X1,
                 x3 * X1 * X2,
                 x3 * X1 * X3 - 2 * S * X1 + 2 * N2 * x1]
    stage3[7] = [0, S, N2 * x1, 0, 0, N2 * S, 0, 0]

    stage4 = [
        [0, 0, 0, 0, 0, 0, -x2, -x3],
        [0, 0, 0, x2, x3, 0, x2 * X1, x3 * X1],
        [-2 * N2 * x2, 0, x2, x1, 0, 0, x3 * X3 + x1 * X1, -x2 * X3],
        [-2 * N2 * x3, 0, x3, 0, x1, 0, -x3 * X2, x2 * X2 + x1 * X1],
        [0, x1, 2 * S - x1 * X1, -x1 * X2, -x1 * X3, 2 * N2 * x1, -2 * S * X2, -2 * S * X3],
        [0, x2, -x2 * X1, 2 * S - x2 * X2, -x2 * X3, 0, 2 * N2 * x1, 0],
        [0, x3, -x3 * X1, -x3 * X2, 2 * S - x3 * X3, 0, 0, 2 * N2 * x1],
        [0, S, N2 * x1, 0, 0, N2 * S + N2 * x1 * X1, 0, 0],
    ]

    stage5 = [
        [0, 0, 0, 0, 0, 0, -x2, -x3],
        [0, 0, 0, x2, x3, 0, 0, 0],
        [-2 * N2 * x2, 0, 0, x1, 0, 0, x3 * X3 + x1 * X1, -x2 * X3],
        [-2 * N2 * x3, 0, 0, 0, x1, 0, -x3 * X2, x2 * X2 + x1 * X1],
        [0, x1, 2 * S, 0, 0, 2 * N2 * x1, -2 * S * X2, -2 * S * X3],
        [0, x2, 0, 2 * S, 0, 0, 2 * N2 * x1, 0],
        [0, x3, 0, 0, 2 * S, 0, 0, 2 * N2 * x1],
        [0, S, N2 * x1 + S * X1, S * X2, S * X3, N2 * S + N2 * x1 * X1, 0, 0],
    ]

    return {k: SymMatrix(m) for k, m in enumerate((stage0, stage1, stage2, stage3, stage4, stage5))}


def reduced_display() -> SymMatrix:
    """The reduced boundary symbol (last reduction stage)"""
    return reduction_displays()[5]


@lru_cache(maxsize=None)
def homotopy_display() -> SymMatrix:
    """Flat homotopy family in (xi, t), without its -1/32 factor"""
    v = _symbols()
    x1, x2, x3, t = v["xi1"], v["xi2"], v["xi3"], v["t"]
    s = 1 - t
    return SymMatrix([
        [0, 0, 0, 0, 0, t * x1, -s * x2, -s * x3],
        [-t * x1, 0, 0, s * x2, s * x3, 0, 0, 0],
        [-2 * s * x2, 0, s * x2, x1, 0, 0, 0, 0],
        [-2 * s * x3, 0, s * x3, 0, x1, 0, 0, 0],
        [0, x1, 0, 0, 0, s * x1, 2 * s * x2, 2 * s * x3],
        [0, s * x2, 0, 0, 0, -s * x2, 2 * x1, 0],
        [0, s * x3, 0, 0, 0, -s * x3, 0, 2 * x1],
        [0, 0, x1, s * x2, s * x3, 0, 0, 0],
    ])


__all__ = [
    "ROW_LABELS",
    "COLUMN_LABELS",
    "boundary_display",
    "reduction_displays",
    "reduced_display",
    "homotopy_display",
]
