"""
Boundary principal symbol of the gauged Bartnik problem

The 8x8 block B~ (columns G, h00, h01..h03, h11, h12, h13) is built from the
transcribed display. The three columns for the boundary metric unknowns
(h22, h23, h33) come from the linearized boundary operators written out
term by term below; the same rows also give an independent copy of B~ that
is compared against the display.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from symring import RationalExpr, SymMatrix
from symbols.displays import COLUMN_LABELS, ROW_LABELS, boundary_display
from symbols.interior import UNKNOWNS

# (i, j) -> column of h_ij in the 11-unknown ordering, symmetric
_H_COLUMN: Dict[Tuple[int, int], int] = {}
for _name in UNKNOWNS[1:]:
    _i, _j = int(_name[1]), int(_name[2])
    _H_COLUMN[(_i, _j)] = _H_COLUMN[(_j, _i)] = UNKNOWNS.index(_name)


@dataclass(frozen=True)
class BoundarySymbol:
    """Full 11x11 boundary symbol and its 8x8 block"""

    full: SymMatrix
    tilde: SymMatrix
    unknown_order: Tuple[str, ...] = UNKNOWNS
    row_order: Tuple[str, ...] = ("h22", "h23", "h33") + ROW_LABELS
    tilde_columns: Tuple[str, ...] = COLUMN_LABELS


class _Row:
    """Accumulates one linear form in the 11 unknowns"""

    def __init__(self):
        self.coeffs: List[RationalExpr] = [RationalExpr.of(0) for _ in UNKNOWNS]

    def add(self, column: int, value) -> "_Row":
        self.coeffs[column] = self.coeffs[column] + value
        return self

    def h(self, i: int, j: int, value) -> "_Row":
        return self.add(_H_COLUMN[(i, j)], value)

    def scaled(self, factor) -> List[RationalExpr]:
        return [c * factor for c in self.coeffs]


def linearized_boundary_rows() -> SymMatrix:
    """
    Principal parts of H', trK', w'2, w'3 and the gauge vector, 8x11

    Index 1 is the boundary normal; the unknown h^(4) has h_0i = X-weighted
    shift perturbation and G enters only through N d_{dM} G.
    """
    xi = {k: RationalExpr.var(f"xi{k}") for k in (1, 2, 3)}
    X = {k: RationalExpr.var(f"X{k}") for k in (1, 2, 3)}
    N = RationalExpr.var("N")
    N2 = N * N
    S = xi[1] * X[1] + xi[2] * X[2] + xi[3] * X[3]
    G = UNKNOWNS.index("G")
    rows: List[List[RationalExpr]] = []

    # H'
    mean = _Row().h(1, 2, -xi[2]).h(1, 3, -xi[3]).h(2, 2, xi[1] / 2).h(3, 3, xi[1] / 2)
    rows.append(mean.coeffs)

    # trK'
    trace = _Row().h(0, 2, 2 * xi[2]).h(0, 3, 2 * xi[3]).h(2, 2, S).h(3, 3, S)
    for l in (1, 2, 3):
        trace.h(2, l, -2 * X[l] * xi[2]).h(3, l, -2 * X[l] * xi[3])
    rows.append(trace.scaled(-1 / (2 * N)))

    # w'_i, i = 2, 3
    for i in (2, 3):
        conn = _Row().h(0, i, xi[1]).h(0, 1, xi[i]).h(1, i, S)
        for l in (1, 2, 3):
            conn.h(i, l, -X[l] * xi[1]).h(1, l, -X[l] * xi[i])
        entries = conn.scaled(-1 / (2 * N))
        entries[G] = entries[G] + N * xi[i]
        rows.append(entries)

    # beta_i, i = 1, 2, 3, before the -1/(2N^2) factor
    for i in (1, 2, 3):
        gauge = _Row().h(0, 0, xi[i]).h(0, i, 2 * S)
        for k in (1, 2, 3):
            for j in (1, 2, 3):
                gauge.h(k, j, X[k] * X[j] * xi[i])
            gauge.h(0, k, -2 * X[k] * xi[i])
            gauge.h(k, k, -N2 * xi[i])
            gauge.h(k, i, -2 * X[k] * S + 2 * N2 * xi[k])
        rows.append(gauge.scaled(-1 / (2 * N2)))

    # beta_0
    gauge0 = _Row().h(0, 0, 2 * S)
    for k in (1, 2, 3):
        gauge0.h(k, 0, -2 * X[k] * S + 2 * N2 * xi[k])
    rows.append(gauge0.scaled(-1 / (2 * N2)))

    return SymMatrix(rows)


def displayed_tilde() -> SymMatrix:
    """B~ = -1/(2N^2) times the transcribed display"""
    N = RationalExpr.var("N")
    return boundary_display().scale(-1 / (2 * N * N))


def build_boundary_symbol() -> BoundarySymbol:
    """
    Assemble [[0 | I3], [B~ | *]] with B~ from the display

    Returns:
        BoundarySymbol with the fixed unknown and row orders
    """
    tilde = displayed_tilde()
    rows = linearized_boundary_rows()
    star = rows.block(range(8), range(8, 11))
    top = [[0] * 8 + [1 if j == i else 0 for j in range(3)] for i in range(3)]
    bottom = [list(tilde.row(i)) + list(star.row(i)) for i in range(8)]
    return BoundarySymbol(full=SymMatrix(top + bottom), tilde=tilde)


def display_consistency() -> List[Tuple[str, str, RationalExpr]]:
    """
    Entries where the term-by-term rows disagree with the display

    Returns:
        [(row label, column label, derived - displayed)] in row-major order
    """
    derived = linearized_boundary_rows().block(range(8), range(8))
    displayed = displayed_tilde()
    return [
        (ROW_LABELS[i], COLUMN_LABELS[j], derived[i, j] - displayed[i, j])
        for i in range(8)
        for j in range(8)
        if not derived[i, j] == displayed[i, j]
    ]


__all__ = [
    "BoundarySymbol",
    "linearized_boundary_rows",
    "displayed_tilde",
    "build_boundary_symbol",
    "display_consistency",
]
