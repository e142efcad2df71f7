"""
Dense matrices of RationalExpr with fraction-free determinants

Rows are cleared of denominators first (row-wise lcm), then the Bareiss
elimination runs on plain polynomials with exact quotients.
"""

from typing import Callable, List, Mapping, Sequence, Tuple

import numpy as np
from sympy.polys.rings import PolyRing

from symring.rational import RationalExpr, evaluate, substitute
from symring.ring import RING, Poly
from utils.errors import NonSquareMatrixError, SymbolicError


class SymMatrix:
    """Immutable rectangular grid of RationalExpr entries"""

    def __init__(self, entries: Sequence[Sequence[object]], ring: PolyRing = RING):
        rows = [[RationalExpr.of(e, ring) for e in row] for row in entries]
        if not rows or any(len(row) != len(rows[0]) for row in rows):
            raise SymbolicError("matrix rows must be non-empty and of equal length")
        self._rows: Tuple[Tuple[RationalExpr, ...], ...] = tuple(tuple(r) for r in rows)
        self.ring = ring

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> RationalExpr:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i},{j}) outside a {self.rows}x{self.cols} matrix")
        return self._rows[i][j]

    def row(self, i: int) -> Tuple[RationalExpr, ...]:
        return self._rows[i]

    def to_lists(self) -> List[List[RationalExpr]]:
        return [list(r) for r in self._rows]

    @classmethod
    def identity(cls, n: int, scalar=1, ring: PolyRing = RING) -> "SymMatrix":
        scalar = RationalExpr.of(scalar, ring)
        zero = RationalExpr.of(0, ring)
        return cls([[scalar if i == j else zero for j in range(n)] for i in range(n)], ring)

    @classmethod
    def zeros(cls, rows: int, cols: int, ring: PolyRing = RING) -> "SymMatrix":
        return cls([[0] * cols for _ in range(rows)], ring)

    # elementwise and block helpers

    def map(self, func: Callable[[RationalExpr], RationalExpr]) -> "SymMatrix":
        return SymMatrix([[func(e) for e in row] for row in self._rows], self.ring)

    def scale(self, factor) -> "SymMatrix":
        return self.map(lambda e: e * factor)

    def subs(self, bindings) -> "SymMatrix":
        """Exact substitution into every entry"""
        return self.map(lambda e: substitute(e, bindings))

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> "SymMatrix":
        return SymMatrix([[self._rows[i][j] for j in cols] for i in rows], self.ring)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["SymMatrix"]]) -> "SymMatrix":
        entries = []
        for band in blocks:
            for i in range(band[0].rows):
                entries.append([e for b in band for e in b.row(i)])
        return cls(entries, blocks[0][0].ring)

    # elementary operations (each returns a new matrix)

    def row_scale(self, i: int, factor) -> "SymMatrix":
        rows = self.to_lists()
        rows[i] = [e * factor for e in rows[i]]
        return SymMatrix(rows, self.ring)

    def row_add(self, target: int, source: int, factor) -> "SymMatrix":
        """R_target += factor * R_source"""
        rows = self.to_lists()
        rows[target] = [a + b * factor for a, b in zip(rows[target], rows[source])]
        return SymMatrix(rows, self.ring)

    def col_add(self, target: int, source: int, factor) -> "SymMatrix":
        """C_target += factor * C_source"""
        rows = self.to_lists()
        for r in rows:
            r[target] = r[target] + r[source] * factor
        return SymMatrix(rows, self.ring)

    def row_swap(self, i: int, j: int) -> "SymMatrix":
        rows = self.to_lists()
        rows[i], rows[j] = rows[j], rows[i]
        return SymMatrix(rows, self.ring)

    def first_mismatch(self, other: "SymMatrix"):
        """(row, col) of the first differing entry, or None when equal"""
        if self.shape != other.shape:
            return (-1, -1)
        for i in range(self.rows):
            for j in range(self.cols):
                if not self[i, j] == other[i, j]:
                    return (i, j)
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self.first_mismatch(other) is None

    __hash__ = None

    def __repr__(self) -> str:
        return f"SymMatrix({self.rows}x{self.cols})"


def det_bareiss(m: SymMatrix) -> RationalExpr:
    """
    Fraction-free determinant

    Args:
        m: Square matrix

    Returns:
        det(m) as an exact RationalExpr
    """
    if m.rows != m.cols:
        raise NonSquareMatrixError(f"determinant of a {m.rows}x{m.cols} matrix")
    ring = m.ring
    n = m.rows

    # triangular input needs no elimination
    if all(m[i, j].is_zero() for i in range(n) for j in range(i)):
        det = RationalExpr.of(1, ring)
        for i in range(n):
            det = det * m[i, i]
        return det

    # clear denominators row by row
    scale = ring.one
    grid: List[List[Poly]] = []
    for i in range(n):
        common = ring.one
        for e in m.row(i):
            if not e.den.is_ground:
                common = common.lcm(e.den)
        row = [
            e.num.quo_ground(e.den.LC) * common if e.den.is_ground else e.num * common.exquo(e.den)
            for e in m.row(i)
        ]
        grid.append(row)
        scale = scale * common

    sign = 1
    previous = ring.one
    for k in range(n - 1):
        if not grid[k][k]:
            for i in range(k + 1, n):
                if grid[i][k]:
                    grid[i], grid[k] = grid[k], grid[i]
                    sign = -sign
                    break
            else:
                return RationalExpr.of(0, ring)
        pivot = grid[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                grid[i][j] = (pivot * grid[i][j] - grid[i][k] * grid[k][j]).exquo(previous)
            grid[i][k] = ring.zero
        previous = pivot

    det = grid[n - 1][n - 1] if sign > 0 else -grid[n - 1][n - 1]
    return RationalExpr.make(det, scale)


def evaluate_matrix(m: SymMatrix, values: Mapping[str, complex]) -> np.ndarray:
    """Complex numpy array of the entries at a numeric point"""
    return np.array(
        [[evaluate(m[i, j], values) for j in range(m.cols)] for i in range(m.rows)],
        dtype=np.complex128,
    )


def det_cofactor(m: SymMatrix) -> RationalExpr:
    """Laplace expansion along the first row; an oracle for small sizes"""
    if m.rows != m.cols:
        raise NonSquareMatrixError(f"determinant of a {m.rows}x{m.cols} matrix")
    rows = m.to_lists()
    return _cofactor(rows, m.ring)


def _cofactor(rows: List[List[RationalExpr]], ring: PolyRing) -> RationalExpr:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = RationalExpr.of(0, ring)
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _cofactor(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


__all__ = ["SymMatrix", "det_bareiss", "det_cofactor", "evaluate_matrix"]
