"""
Fraction-Free Linear Algebra
Bareiss elimination over Z[q,t] and exact kernels and determinants over Q(q,t)
"""

import logging
from typing import List, Sequence, Tuple

from scalars import ONE, QT, QT_RING, ZERO, IntPoly2, QTScalar

logger = logging.getLogger(__name__)


class LinearAlgebraError(ArithmeticError):
    """Raised when an elimination step is inconsistent"""


def clear_row(row: Sequence[QTScalar]) -> Tuple[List[IntPoly2], IntPoly2]:
    """Multiply a row by the lcm of its denominators; returns (row, multiplier)"""
    common = QT_RING.one
    for entry in row:
        common = common.lcm(entry.denom)
    return [entry.numer * common.exquo(entry.denom) for entry in row], common


def fraction_free_echelon(rows: Sequence[Sequence[IntPoly2]]) -> Tuple[List[List[IntPoly2]], List[int], int]:
    """Bareiss row echelon form; returns (matrix, pivot columns, row-swap sign)

    The pivot in each column is the candidate with the fewest monomials.
    Every division by the previous pivot is exact.
    """
    matrix = [list(row) for row in rows]
    height = len(matrix)
    width = len(matrix[0]) if matrix else 0
    previous = QT_RING.one
    pivots: List[int] = []
    sign = 1
    pivot_row = 0
    for col in range(width):
        if pivot_row == height:
            break
        candidates = [r for r in range(pivot_row, height) if matrix[r][col]]
        if not candidates:
            continue
        best = min(candidates, key=lambda r: (len(matrix[r][col]), r))
        if best != pivot_row:
            matrix[pivot_row], matrix[best] = matrix[best], matrix[pivot_row]
            sign = -sign
        pivot = matrix[pivot_row][col]
        for r in range(pivot_row + 1, height):
            lead = matrix[r][col]
            for c in range(col + 1, width):
                value = pivot * matrix[r][c] - lead * matrix[pivot_row][c]
                try:
                    matrix[r][c] = value.exquo(previous)
                except Exception:
                    logger.error(f"Non-exact Bareiss step at row {r}, column {c}")
                    raise LinearAlgebraError("fraction-free elimination produced a non-exact division")
            matrix[r][col] = QT_RING.zero
        previous = pivot
        pivots.append(col)
        pivot_row += 1
    return matrix, pivots, sign


def kernel(rows: Sequence[Sequence[QTScalar]], width: int) -> List[List[QTScalar]]:
    """A basis of {v : rows * v = 0}, one vector per free column"""
    if not rows:
        return [[ONE if c == f else ZERO for c in range(width)] for f in range(width)]
    cleared = [clear_row(row)[0] for row in rows]
    echelon, pivots, _ = fraction_free_echelon(cleared)
    free = [c for c in range(width) if c not in pivots]
    logger.debug(f"kernel: {len(rows)} x {width} system, rank {len(pivots)}")
    basis = []
    for f in free:
        vector = [ZERO] * width
        vector[f] = ONE
        for index in reversed(range(len(pivots))):
            column = pivots[index]
            row = echelon[index]
            accumulated = ZERO
            for c in range(column + 1, width):
                if row[c] and vector[c]:
                    accumulated += QT(row[c]) * vector[c]
            vector[column] = -accumulated / QT(row[column])
        basis.append(vector)
    return basis


def rank(rows: Sequence[Sequence[QTScalar]]) -> int:
    if not rows:
        return 0
    _, pivots, _ = fraction_free_echelon([clear_row(row)[0] for row in rows])
    return len(pivots)


def determinant(rows: Sequence[Sequence[QTScalar]]) -> QTScalar:
    """Exact determinant of a square matrix over Q(q,t)"""
    size = len(rows)
    if size == 0:
        return ONE
    if any(len(row) != size for row in rows):
        raise LinearAlgebraError("determinant of a non-square matrix")
    cleared = []
    multiplier = QT_RING.one
    for row in rows:
        values, common = clear_row(row)
        cleared.append(values)
        multiplier *= common
    echelon, pivots, sign = fraction_free_echelon(cleared)
    if len(pivots) < size:
        return ZERO
    return QT((echelon[size - 1][size - 1] * sign, multiplier))


def mat_vec(matrix: Sequence[Sequence[QTScalar]], vector: Sequence[QTScalar]) -> List[QTScalar]:
    result = []
    for row in matrix:
        total = ZERO
        for entry, value in zip(row, vector):
            if entry and value:
                total += entry * value
        result.append(total)
    return result


def mat_mul(left: Sequence[Sequence[QTScalar]], right: Sequence[Sequence[QTScalar]]) -> List[List[QTScalar]]:
    columns = list(zip(*right))
    return [mat_vec([list(column) for column in columns], row) for row in left]
