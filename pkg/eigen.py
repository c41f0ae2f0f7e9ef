"""
Operator Matrices and the Eigenvector Route
Matrices of M^(i) on the degree-n monomial-symmetric basis, joint eigenvectors
as P_gamma, eigenvalue tuples, and the orientation cross-check
"""

import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix

from linalg import kernel, mat_vec
from partitions import DimVector, MultiPartition, Partition, fiber, reversed_quotient
from polynomials import (
    MultiSymPoly, VarId, alphabet, combine_basis, evaluate_at, expand_in_basis, monomial_basis,
    monomial_basis_keys,
)
from operators import (
    OperatorError, OperatorKind, PointRealization, apply_operator, eigenvalue, operator_normalization,
    operator_terms,
)
from scalars import QT, QT_RING, ZERO, QTScalar, format_scalar
from symfunc import graded_slice, kostka
from wreath_macdonald import DefinitionError, Orientation, check_dimension_vector, compute_P_finite

logger = logging.getLogger(__name__)


class EigenError(RuntimeError):
    """The joint eigenspace is not a line, or cannot be normalized"""

    def __init__(self, message: str, kind: str):
        super().__init__(message)
        self.kind = kind  # "empty-kernel", "collision" or "normalization"


@dataclass(frozen=True)
class EvaluationConfig:
    """Integer sample points for building operator matrices by evaluation"""
    seed: int = 20240611
    low: int = 2
    high: int = 997
    # points beyond the square system, used to certify the result
    extra_points: int = 2
    max_attempts: int = 50


DEFAULT_EVALUATION = EvaluationConfig()


@dataclass(frozen=True)
class SliceMatrix:
    """entries[row][column]: column c holds the coordinates of M(basis[c])"""
    N: DimVector
    degree: int
    vertex: int
    kind: OperatorKind
    keys: Tuple[MultiPartition, ...]
    entries: Tuple[Tuple[QTScalar, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.keys)

    def apply(self, vector: Sequence[QTScalar]) -> List[QTScalar]:
        return mat_vec(self.entries, vector)

    def column(self, c: int) -> List[QTScalar]:
        return [row[c] for row in self.entries]

    def shifted(self, value: QTScalar) -> List[List[QTScalar]]:
        """M - value * Id"""
        return [[entry - value if r == c else entry for c, entry in enumerate(row)]
                for r, row in enumerate(self.entries)]

    def format(self) -> List[str]:
        lines = [f"M^({self.vertex}) on degree {self.degree}, N=({self.N}), basis " +
                 " ".join(f"m[{key}]" for key in self.keys)]
        for key, row in zip(self.keys, self.entries):
            lines.append(f"  m[{key}]: " + ", ".join(format_scalar(entry) for entry in row))
        return lines


def _sample_point(variables: Sequence[VarId], config: EvaluationConfig, rng: random.Random) -> Dict[VarId, int]:
    values = rng.sample(range(config.low, config.high), len(variables))
    return dict(zip(variables, values))


def _basis_integer_values(basis: Sequence[MultiSymPoly], point: Sequence[int]) -> List[int]:
    """Basis elements are sums of monomials with coefficient 1"""
    values = []
    for element in basis:
        total = 0
        for monom in element.poly.keys():
            term = 1
            for value, e in zip(point, monom):
                if e:
                    term *= value ** e
            total += term
        values.append(total)
    return values


def _operator_values(kind: OperatorKind, i: int, N: DimVector, point: Dict[VarId, int],
                     basis: Sequence[MultiSymPoly]) -> List[QTScalar]:
    """(M b)(point) for every basis element b, with q and t symbolic"""
    letters = alphabet(N)
    realization = PointRealization(letters, point)
    q_ring = QT_RING.gens[0]
    totals = [ZERO] * len(basis)
    for term in operator_terms(kind, i, N, realization):
        coefficient = term.coefficient.value(QT) * term.sign
        moves = term.substitution_map()
        shifted = []
        for vid in letters.variables:
            if vid in moves:
                target, power = moves[vid]
                shifted.append(q_ring ** power * point[target])
            else:
                shifted.append(QT_RING(point[vid]))
        for c, element in enumerate(basis):
            totals[c] += coefficient * evaluate_at(element, shifted)
    return totals


def _as_qt(value) -> QTScalar:
    return QT(int(value.p)) / QT(int(value.q))


def _matrix_by_evaluation(kind: OperatorKind, i: int, N: DimVector, degree: int, normalized: bool,
                          config: EvaluationConfig) -> List[List[QTScalar]]:
    letters = alphabet(N)
    basis = monomial_basis(N, degree)
    size = len(basis)
    rng = random.Random(config.seed)

    for attempt in range(config.max_attempts):
        points = [_sample_point(letters.variables, config, rng) for _ in range(size)]
        square = [_basis_integer_values(basis, [p[v] for v in letters.variables]) for p in points]
        if Matrix(square).det() != 0:
            break
    else:
        raise OperatorError(f"no nonsingular sample found for N=({N}), degree {degree}")
    logger.debug(f"evaluation matrix for M^({i}) on N=({N}), degree {degree}: {size} points, "
                 f"{attempt + 1} attempt(s)")

    inverse = Matrix(square).inv()
    inverse = [[_as_qt(inverse[a, b]) for b in range(size)] for a in range(size)]
    values = [_operator_values(kind, i, N, point, basis) for point in points]

    # coordinates[c][b]: coefficient of basis[c] in M(basis[b])
    coordinates = [[ZERO] * size for _ in range(size)]
    for c in range(size):
        for p in range(size):
            weight = inverse[c][p]
            if not weight:
                continue
            for b in range(size):
                if values[p][b]:
                    coordinates[c][b] += weight * values[p][b]

    for _ in range(config.extra_points):
        point = _sample_point(letters.variables, config, rng)
        predicted_basis = _basis_integer_values(basis, [point[v] for v in letters.variables])
        actual = _operator_values(kind, i, N, point, basis)
        for b in range(size):
            predicted = ZERO
            for c in range(size):
                if coordinates[c][b]:
                    predicted += coordinates[c][b] * predicted_basis[c]
            if predicted != actual[b]:
                logger.error(f"M^({i}) on N=({N}) leaves the symmetric span at a check point")
                raise OperatorError(f"{kind.value} operator output of basis element {b} "
                                    f"is not in the degree-{degree} symmetric span")

    if normalized and kind == OperatorKind.WREATH:
        factor = operator_normalization(N.r)
        coordinates = [[factor * entry for entry in row] for row in coordinates]
    return coordinates


def _matrix_by_symbolic_apply(kind: OperatorKind, i: int, N: DimVector, degree: int,
                              normalized: bool) -> List[List[QTScalar]]:
    basis = monomial_basis(N, degree)
    columns = [expand_in_basis(apply_operator(kind, i, N, element, normalized), degree) for element in basis]
    return [[columns[c][row] for c in range(len(basis))] for row in range(len(basis))]


@lru_cache(maxsize=None)
def operator_matrix(i: int, N: DimVector, degree: int, kind: OperatorKind = OperatorKind.WREATH,
                    method: str = "evaluate", normalized: bool = True,
                    config: EvaluationConfig = DEFAULT_EVALUATION) -> SliceMatrix:
    """Matrix of an operator on the degree-n slice of the finite ring

    "evaluate" interpolates from integer points in the x-variables and checks
    the result on further points; "symbolic" applies the operator to each
    basis element.
    """
    kind = OperatorKind(kind)
    i %= N.r
    keys = monomial_basis_keys(N, degree)
    if not keys:
        entries = []
    elif method == "evaluate":
        entries = _matrix_by_evaluation(kind, i, N, degree, normalized, config)
    elif method == "symbolic":
        entries = _matrix_by_symbolic_apply(kind, i, N, degree, normalized)
    else:
        raise ValueError(f"unknown matrix method {method!r}")
    return SliceMatrix(N, degree, i, kind, keys, tuple(tuple(row) for row in entries))


# Tensor Schur basis against the monomial basis

@lru_cache(maxsize=None)
def schur_change_of_basis(N: DimVector, degree: int) -> Tuple[Tuple[int, ...], ...]:
    """Rows: monomial keys; columns: Schur keys; entries prod_i K_{kappa^(i) mu^(i)}"""
    r = N.r
    if any(N[i] < degree for i in range(r)):
        raise ValueError(f"N=({N}) is too small for the degree-{degree} Schur basis")
    schur_keys = graded_slice(r, degree).keys
    rows = []
    for mu in monomial_basis_keys(N, degree):
        row = []
        for kappa in schur_keys:
            value = 1
            for j in range(r):
                value *= kostka(kappa[j], mu[j].parts)
                if not value:
                    break
            row.append(value)
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def _monomial_to_schur(N: DimVector, degree: int) -> Tuple[Tuple[QTScalar, ...], ...]:
    inverse = Matrix(schur_change_of_basis(N, degree)).inv()
    size = inverse.shape[0]
    return tuple(tuple(_as_qt(inverse[a, b]) for b in range(size)) for a in range(size))


def schur_coordinates(N: DimVector, degree: int, coordinates: Sequence[QTScalar]) -> Dict[MultiPartition, QTScalar]:
    """Monomial coordinates to tensor Schur coordinates"""
    values = mat_vec(_monomial_to_schur(N, degree), coordinates)
    return {key: value for key, value in zip(graded_slice(N.r, degree).keys, values) if value}


# Eigenvalues and eigenvectors

def eigenvalue_tuples(core: Partition, r: int, n: int, N: DimVector) -> Dict[Partition, Tuple[QTScalar, ...]]:
    return {lam: tuple(eigenvalue(lam, i, N) for i in range(r)) for lam in fiber(core, r, n)}


def _check_separation(lam: Partition, tuples: Dict[Partition, Tuple[QTScalar, ...]]):
    target = tuples[lam]
    for other, values in tuples.items():
        if other != lam and values == target:
            raise EigenError(f"({lam}) and ({other}) share the eigenvalue tuple", "collision")


def solve_P_by_eigen(lam: Partition, r: int, N: DimVector, method: str = "evaluate",
                     config: EvaluationConfig = DEFAULT_EVALUATION) -> MultiSymPoly:
    """The joint eigenvector of M^(0..r-1) with eigenvalues e^(i)_lambda, normalized like P"""
    info = check_dimension_vector(lam, r, N)
    n = info.n
    tuples = eigenvalue_tuples(info.core, r, n, N)
    _check_separation(lam, tuples)

    size = len(monomial_basis_keys(N, n))
    rows: List[List[QTScalar]] = []
    for i in range(r):
        matrix = operator_matrix(i, N, n, OperatorKind.WREATH, method, True, config)
        rows.extend(matrix.shifted(tuples[lam][i]))
    solutions = kernel(rows, size)
    logger.info(f"eigen route for ({lam}), r={r}, N=({N}): {len(rows)} x {size} system, "
                f"kernel dimension {len(solutions)}")
    if not solutions:
        raise EigenError(f"no joint eigenvector for ({lam}) on N=({N})", "empty-kernel")
    if len(solutions) > 1:
        raise EigenError(f"joint eigenspace for ({lam}) has dimension {len(solutions)}", "collision")

    vector = solutions[0]
    leading = schur_coordinates(N, n, vector).get(reversed_quotient(lam, r), ZERO)
    if not leading:
        raise EigenError(f"eigenvector for ({lam}) has no s[{reversed_quotient(lam, r)}] term", "normalization")
    return combine_basis(N, n, [value / leading for value in vector])


def certify_orientation(core: Partition, r: int, n: int, N: DimVector, method: str = "evaluate",
                        config: EvaluationConfig = DEFAULT_EVALUATION) -> Optional[Orientation]:
    """The first orientation whose definition route agrees with the eigen route on the whole fiber"""
    members = fiber(core, r, n)
    expected = {lam: solve_P_by_eigen(lam, r, N, method, config) for lam in members}
    for orientation in Orientation:
        try:
            if all(compute_P_finite(lam, r, N, orientation) == expected[lam] for lam in members):
                logger.info(f"orientation {orientation.value} certified for core ({core}), r={r}, n={n}")
                return orientation
        except DefinitionError as e:
            logger.debug(f"orientation {orientation.value} rejected: {str(e)}")
    return None
