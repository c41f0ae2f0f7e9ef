"""
Tensor Symmetric Functions
Elements of the r-fold tensor power of the ring of symmetric functions over
Q(q,t) in the power-sum, monomial and Schur bases, the plethystic twists
p_d[X^(i)] -> p_d[X^(i)] - a^d p_d[X^(i-1)], the Hall pairing, and the
projection to finitely many variables
"""

import itertools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, List, Mapping, Tuple

from sympy import Matrix

from partitions import EMPTY, DimVector, MultiPartition, Partition, multipartitions, partitions_of, rim_hooks
from polynomials import MultiSymPoly, alphabet, monomial_symmetric
from scalars import ONE, QT, ZERO, QTScalar, as_scalar, format_scalar, parse_scalar

logger = logging.getLogger(__name__)


class Basis(str, Enum):
    POWER = "power"
    MONOMIAL = "monomial"
    SCHUR = "schur"


# Single-alphabet tables, memoized per partition (lru_cache is safe for
# concurrent readers; a racing writer recomputes the same value)

@lru_cache(maxsize=None)
def character(lam: Partition, rho: Partition) -> int:
    """Murnaghan-Nakayama: chi^lam evaluated on cycle type rho"""
    if lam.size != rho.size:
        return 0
    if not rho.parts:
        return 1
    first, rest = rho.parts[0], Partition(rho.parts[1:])
    return sum((-1) ** height * character(smaller, rest) for smaller, height in rim_hooks(lam, first))


def z_factor(rho: Partition) -> int:
    """z_rho = prod_i i^{m_i} m_i!"""
    value = 1
    for part, group in itertools.groupby(rho.parts):
        count = len(list(group))
        value *= part ** count * math.factorial(count)
    return value


def _horizontal_strips(lam: Partition, size: int) -> List[Partition]:
    """All kappa inside lam with lam/kappa a horizontal strip of `size` boxes"""
    ranges = [range(lam.part(j + 1), lam.part(j) + 1) for j in range(lam.length)]
    found = []
    for rows in itertools.product(*ranges):
        if lam.size - sum(rows) == size:
            found.append(Partition.from_parts(rows))
    return found


@lru_cache(maxsize=None)
def kostka(lam: Partition, content: Tuple[int, ...]) -> int:
    """Number of semistandard tableaux of shape lam and the given content"""
    if not content:
        return 1 if not lam.parts else 0
    if lam.size != sum(content):
        return 0
    *head, last = content
    return sum(kostka(smaller, tuple(head)) for smaller in _horizontal_strips(lam, last))


@lru_cache(maxsize=None)
def _inverse_kostka(degree: int) -> Tuple[Tuple[int, ...], ...]:
    """Rows mu, columns lam of K^{-1}, with K[lam][mu] = K_{lam mu}"""
    shapes = partitions_of(degree)
    matrix = Matrix([[kostka(lam, mu.parts) for mu in shapes] for lam in shapes])
    inverse = matrix.inv()
    return tuple(tuple(int(inverse[a, b]) for b in range(len(shapes))) for a in range(len(shapes)))


def _rational(numerator: int, denominator: int = 1) -> QTScalar:
    return QT(numerator) / QT(denominator)


@lru_cache(maxsize=None)
def _single_transition(source: Basis, target: Basis, lam: Partition) -> Tuple[Tuple[Partition, QTScalar], ...]:
    """Expansion of one single-alphabet basis element in another basis"""
    if source == target:
        return ((lam, ONE),)
    shapes = partitions_of(lam.size)
    expansion: Dict[Partition, QTScalar] = {}
    if source == Basis.SCHUR and target == Basis.POWER:
        for rho in shapes:
            value = character(lam, rho)
            if value:
                expansion[rho] = _rational(value, z_factor(rho))
    elif source == Basis.POWER and target == Basis.SCHUR:
        for mu in shapes:
            value = character(mu, lam)
            if value:
                expansion[mu] = _rational(value)
    elif source == Basis.SCHUR and target == Basis.MONOMIAL:
        for mu in shapes:
            value = kostka(lam, mu.parts)
            if value:
                expansion[mu] = _rational(value)
    elif source == Basis.MONOMIAL and target == Basis.SCHUR:
        row = _inverse_kostka(lam.size)[shapes.index(lam)]
        for mu, value in zip(shapes, row):
            if value:
                expansion[mu] = _rational(value)
    else:
        # power <-> monomial goes through Schur
        combined: Dict[Partition, QTScalar] = defaultdict(lambda: ZERO)
        for middle, outer in _single_transition(source, Basis.SCHUR, lam):
            for key, inner in _single_transition(Basis.SCHUR, target, middle):
                combined[key] += outer * inner
        expansion = {key: value for key, value in combined.items() if value}
    return tuple(expansion.items())


def _sorted_partition(parts: List[int]) -> Partition:
    return Partition(tuple(sorted(parts, reverse=True)))


@dataclass(frozen=True)
class TensorSymFunc:
    """Finitely supported expansion in one of the named bases"""
    r: int
    basis: Basis
    coefficients: Mapping[MultiPartition, QTScalar] = field(default_factory=dict)

    def __post_init__(self):
        basis = Basis(self.basis)
        object.__setattr__(self, "basis", basis)
        cleaned = {}
        for key, value in self.coefficients.items():
            if key.r != self.r:
                raise ValueError(f"key {key} has {key.r} components, expected {self.r}")
            value = as_scalar(value)
            if value:
                cleaned[key] = value
        object.__setattr__(self, "coefficients", dict(sorted(cleaned.items())))

    @classmethod
    def zero(cls, r: int, basis: Basis = Basis.SCHUR) -> "TensorSymFunc":
        return cls(r, basis, {})

    @classmethod
    def one(cls, r: int, basis: Basis = Basis.SCHUR) -> "TensorSymFunc":
        return cls(r, basis, {MultiPartition.empty(r): ONE})

    @classmethod
    def unit(cls, key: MultiPartition, basis: Basis = Basis.SCHUR) -> "TensorSymFunc":
        return cls(key.r, basis, {key: ONE})

    def coefficient(self, key: MultiPartition) -> QTScalar:
        return self.coefficients.get(key, ZERO)

    def is_zero(self) -> bool:
        return not self.coefficients

    def degrees(self) -> set:
        return {key.size for key in self.coefficients}

    def _check_compatible(self, other: "TensorSymFunc"):
        if other.r != self.r:
            raise ValueError(f"cannot combine r={self.r} with r={other.r}")

    def __add__(self, other: "TensorSymFunc") -> "TensorSymFunc":
        self._check_compatible(other)
        other = convert_basis(other, self.basis)
        combined = dict(self.coefficients)
        for key, value in other.coefficients.items():
            combined[key] = combined.get(key, ZERO) + value
        return TensorSymFunc(self.r, self.basis, combined)

    def __neg__(self) -> "TensorSymFunc":
        return self.scale(-ONE)

    def __sub__(self, other: "TensorSymFunc") -> "TensorSymFunc":
        return self + (-other)

    def scale(self, c: QTScalar) -> "TensorSymFunc":
        c = as_scalar(c)
        return TensorSymFunc(self.r, self.basis, {k: c * v for k, v in self.coefficients.items()})

    def __mul__(self, other: "TensorSymFunc") -> "TensorSymFunc":
        """Product, computed on power sums where it is concatenation of parts"""
        self._check_compatible(other)
        left = convert_basis(self, Basis.POWER)
        right = convert_basis(other, Basis.POWER)
        product: Dict[MultiPartition, QTScalar] = defaultdict(lambda: ZERO)
        for key_a, value_a in left.coefficients.items():
            for key_b, value_b in right.coefficients.items():
                key = MultiPartition(tuple(
                    _sorted_partition(list(a.parts) + list(b.parts))
                    for a, b in zip(key_a.components, key_b.components)))
                product[key] += value_a * value_b
        return convert_basis(TensorSymFunc(self.r, Basis.POWER, product), self.basis)

    def to_json_dict(self) -> Dict:
        return {
            "r": self.r,
            "basis": self.basis.value,
            "terms": [{"key": str(key), "coeff": format_scalar(value)}
                      for key, value in self.coefficients.items()],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "TensorSymFunc":
        from utils import parse_multipartition
        r = int(data["r"])
        terms = {}
        for term in data.get("terms", []):
            key = parse_multipartition(term["key"], r)
            terms[key] = terms.get(key, ZERO) + parse_scalar(term["coeff"])
        return cls(r, Basis(data["basis"]), terms)

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        symbol = {Basis.POWER: "p", Basis.MONOMIAL: "m", Basis.SCHUR: "s"}[self.basis]
        return " + ".join(f"({format_scalar(v)})*{symbol}[{k}]" for k, v in self.coefficients.items())


def convert_basis(f: TensorSymFunc, target: Basis) -> TensorSymFunc:
    """Re-expand f in the target basis, one alphabet at a time"""
    target = Basis(target)
    if f.basis == target:
        return f
    result: Dict[MultiPartition, QTScalar] = defaultdict(lambda: ZERO)
    for key, value in f.coefficients.items():
        per_vertex = [_single_transition(f.basis, target, component) for component in key.components]
        for choice in itertools.product(*per_vertex):
            coeff = value
            for _, factor in choice:
                coeff = coeff * factor
            result[MultiPartition(tuple(part for part, _ in choice))] += coeff
    return TensorSymFunc(f.r, target, result)


GeneratorImage = Callable[[int, int], Dict[int, QTScalar]]


def _apply_generator_map(f: TensorSymFunc, image: GeneratorImage) -> TensorSymFunc:
    """Algebra map sending p_d at vertex i to sum_j image(i, d)[j] * p_d at vertex j"""
    power = convert_basis(f, Basis.POWER)
    r = f.r
    result: Dict[MultiPartition, QTScalar] = defaultdict(lambda: ZERO)
    for key, value in power.coefficients.items():
        partial: Dict[Tuple[Tuple[int, ...], ...], QTScalar] = {tuple(() for _ in range(r)): value}
        for vertex, component in enumerate(key.components):
            for d in component.parts:
                targets = image(vertex, d)
                grown: Dict[Tuple[Tuple[int, ...], ...], QTScalar] = defaultdict(lambda: ZERO)
                for parts, coeff in partial.items():
                    for j, factor in targets.items():
                        new_parts = list(parts)
                        new_parts[j] = tuple(sorted(parts[j] + (d,), reverse=True))
                        grown[tuple(new_parts)] += coeff * factor
                partial = {k: v for k, v in grown.items() if v}
        for parts, coeff in partial.items():
            result[MultiPartition(tuple(Partition(p) for p in parts))] += coeff
    return convert_basis(TensorSymFunc(r, Basis.POWER, result), f.basis)


def plethystic_twist(f: TensorSymFunc, a: QTScalar) -> TensorSymFunc:
    """p_d[X^(i)] -> p_d[X^(i)] - a^d p_d[X^(i-1)], extended multiplicatively"""
    a = as_scalar(a)
    r = f.r

    def image(i: int, d: int) -> Dict[int, QTScalar]:
        targets: Dict[int, QTScalar] = defaultdict(lambda: ZERO)
        targets[i] += ONE
        targets[(i - 1) % r] -= a ** d
        return dict(targets)

    return _apply_generator_map(f, image)


def plethystic_twist_inverse(f: TensorSymFunc, a: QTScalar) -> TensorSymFunc:
    """Inverse of the twist: p_d^(i) -> sum_k a^{dk} p_d^(i-k) / (1 - a^{dr})"""
    a = as_scalar(a)
    r = f.r

    def image(i: int, d: int) -> Dict[int, QTScalar]:
        denominator = ONE - a ** (d * r)
        if not denominator:
            raise ZeroDivisionError(f"twist by a={format_scalar(a)} is not invertible in degree {d}")
        targets: Dict[int, QTScalar] = defaultdict(lambda: ZERO)
        for k in range(r):
            targets[(i - k) % r] += a ** (d * k) / denominator
        return dict(targets)

    return _apply_generator_map(f, image)


def hall_pairing(f: TensorSymFunc, g: TensorSymFunc) -> QTScalar:
    """Tensor Hall pairing; tensor Schur functions are orthonormal"""
    if f.r != g.r:
        raise ValueError(f"cannot pair r={f.r} with r={g.r}")
    left = convert_basis(f, Basis.SCHUR)
    right = convert_basis(g, Basis.SCHUR)
    total = ZERO
    for key, value in left.coefficients.items():
        other = right.coefficients.get(key)
        if other is not None:
            total += value * other
    return total


@dataclass(frozen=True)
class GradedSlice:
    r: int
    total_degree: int
    keys: Tuple[MultiPartition, ...]

    @property
    def dimension(self) -> int:
        return len(self.keys)

    def index(self, key: MultiPartition) -> int:
        return self.keys.index(key)


@lru_cache(maxsize=None)
def graded_slice(r: int, degree: int) -> GradedSlice:
    return GradedSlice(r, degree, multipartitions(degree, r))


def one_row_at_zero(r: int, n: int) -> TensorSymFunc:
    """s_(n) at vertex 0, empty partitions elsewhere"""
    row = Partition((n,)) if n else EMPTY
    return TensorSymFunc.unit(MultiPartition.single(r, 0, row))


def project(f: TensorSymFunc, N: DimVector) -> MultiSymPoly:
    """Evaluate alphabet i in x^(i)_1, ..., x^(i)_{N_i}"""
    if N.r != f.r:
        raise ValueError(f"dimension vector has {N.r} entries, expected {f.r}")
    letters = alphabet(N)
    monomial = convert_basis(f, Basis.MONOMIAL)
    poly = letters.ring.zero
    for key, value in monomial.coefficients.items():
        if any(key[i].length > N[i] for i in range(f.r)):
            continue
        term = letters.ring.one
        for i in range(f.r):
            term = term * monomial_symmetric(letters, i, key[i])
        poly += term * value
    return MultiSymPoly(N, poly)
