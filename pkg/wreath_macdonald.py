"""
Wreath Macdonald Functions by Definition
H~ from its two twisted-triangularity conditions and the s_(n) normalization,
P from H~ by the inverse-t twist, and the finite-variable specialization
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Tuple

from linalg import kernel
from partitions import (
    DimVector, Partition, dominance_leq, fiber, is_compatible, kappa_cl, r_core, reversed_quotient,
)
from polynomials import MultiSymPoly
from scalars import ONE, QT, QTScalar, qt_invert_q, t
from symfunc import Basis, TensorSymFunc, graded_slice, one_row_at_zero, plethystic_twist, project

logger = logging.getLogger(__name__)


class Orientation(str, Enum):
    """Which side of lambda each twisted support condition allows"""
    # twist by q supported on mu >= lambda, twist by 1/t on mu <= lambda
    UPPER_LOWER = "upper-lower"
    LOWER_UPPER = "lower-upper"


DEFAULT_ORIENTATION = Orientation.UPPER_LOWER


class DefinitionError(RuntimeError):
    """The defining conditions do not cut out exactly one normalized function"""

    def __init__(self, message: str, dimension: int = -1):
        super().__init__(message)
        self.dimension = dimension


@dataclass(frozen=True)
class FiberInfo:
    """The fiber of lambda: its r-core, quotient size n and all members"""
    core: Partition
    n: int
    members: Tuple[Partition, ...]


def fiber_of(lam: Partition, r: int) -> FiberInfo:
    core = r_core(lam, r)
    n, remainder = divmod(lam.size - core.size, r)
    if remainder:
        raise DefinitionError(f"({lam}) has core ({core}) but {lam.size - core.size} boxes off the core")
    return FiberInfo(core, n, fiber(core, r, n))


Twist = str  # "q" or "1/t"

_TWIST_VALUES = {"q": QT.gens[0], "1/t": ONE / t}


@lru_cache(maxsize=None)
def twist_matrix(r: int, n: int, twist: Twist) -> Tuple[Tuple[QTScalar, ...], ...]:
    """Rows: output Schur keys; columns: input Schur keys; both in graded_slice order"""
    a = _TWIST_VALUES[twist]
    keys = graded_slice(r, n).keys
    index = {key: j for j, key in enumerate(keys)}
    rows = [[QT.zero] * len(keys) for _ in keys]
    for column, key in enumerate(keys):
        image = plethystic_twist(TensorSymFunc.unit(key, Basis.SCHUR), a)
        for out_key, value in image.coefficients.items():
            rows[index[out_key]][column] = value
    logger.debug(f"twist matrix r={r} n={n} a={twist}: {len(keys)} x {len(keys)}")
    return tuple(tuple(row) for row in rows)


def _support_allows(mu: Partition, lam: Partition, condition: int, orientation: Orientation) -> bool:
    upper = dominance_leq(lam, mu)
    lower = dominance_leq(mu, lam)
    if orientation == Orientation.UPPER_LOWER:
        return upper if condition == 1 else lower
    return lower if condition == 1 else upper


def constraint_rows(lam: Partition, r: int, orientation: Orientation = DEFAULT_ORIENTATION) -> List[List[QTScalar]]:
    """One linear condition per forbidden (twist, member) pair"""
    info = fiber_of(lam, r)
    slice_ = graded_slice(r, info.n)
    twisted_q = twist_matrix(r, info.n, "q")
    twisted_t = twist_matrix(r, info.n, "1/t")
    rows = []
    for mu in info.members:
        row_index = slice_.index(reversed_quotient(mu, r))
        if not _support_allows(mu, lam, 1, orientation):
            rows.append(list(twisted_q[row_index]))
        if not _support_allows(mu, lam, 2, orientation):
            rows.append(list(twisted_t[row_index]))
    return rows


@lru_cache(maxsize=None)
def _compute_Hhat(lam: Partition, r: int, orientation: Orientation) -> TensorSymFunc:
    info = fiber_of(lam, r)
    slice_ = graded_slice(r, info.n)
    rows = constraint_rows(lam, r, orientation)
    solutions = kernel(rows, slice_.dimension)
    logger.info(f"H~ for ({lam}), r={r}: {len(rows)} conditions on {slice_.dimension} unknowns, "
                f"{len(solutions)}-dimensional solution space")
    if len(solutions) != 1:
        logger.error(f"Defining conditions for ({lam}) leave a {len(solutions)}-dimensional space")
        raise DefinitionError(
            f"conditions for ({lam}) with r={r} cut out a {len(solutions)}-dimensional space", len(solutions))

    vector = solutions[0]
    anchor = one_row_at_zero(r, info.n)
    (anchor_key,) = anchor.coefficients
    pairing = vector[slice_.index(anchor_key)]
    if not pairing:
        raise DefinitionError(f"H~ for ({lam}) pairs to zero with s_({info.n}) at vertex 0", 1)
    return TensorSymFunc(r, Basis.SCHUR, {key: value / pairing for key, value in zip(slice_.keys, vector)})


def compute_Hhat(lam: Partition, r: int, orientation: Orientation = DEFAULT_ORIENTATION) -> TensorSymFunc:
    """The unique H~_lambda satisfying both twisted support conditions, in the Schur basis"""
    return _compute_Hhat(lam, r, Orientation(orientation))


def compute_P(lam: Partition, r: int, orientation: Orientation = DEFAULT_ORIENTATION) -> TensorSymFunc:
    """H~ twisted by a = 1/t, scaled so the coefficient of s at the reversed quotient is 1"""
    twisted = plethystic_twist(compute_Hhat(lam, r, orientation), ONE / t)
    key = reversed_quotient(lam, r)
    leading = twisted.coefficient(key)
    if not leading:
        raise DefinitionError(f"P for ({lam}) has no s[{key}] term to normalize by", 1)
    return twisted.scale(ONE / leading)


def check_dimension_vector(lam: Partition, r: int, N: DimVector) -> FiberInfo:
    """Raise unless N is compatible with the core of lambda and N_i >= n everywhere"""
    info = fiber_of(lam, r)
    if N.r != r:
        raise DefinitionError(f"dimension vector ({N}) has {N.r} entries, expected {r}")
    gamma = kappa_cl(info.core, r)
    if not is_compatible(N, gamma, r):
        raise DefinitionError(f"N=({N}) is not compatible with gamma={gamma}")
    if any(N[i] < info.n for i in range(r)):
        raise DefinitionError(f"N=({N}) needs every entry >= {info.n}")
    return info


def invert_q(f: TensorSymFunc) -> TensorSymFunc:
    return TensorSymFunc(f.r, f.basis, {key: qt_invert_q(value) for key, value in f.coefficients.items()})


def compute_P_finite(lam: Partition, r: int, N: DimVector,
                     orientation: Orientation = DEFAULT_ORIENTATION) -> MultiSymPoly:
    """P_gamma: q -> 1/q on P_lambda, then x^(i) restricted to N_i variables"""
    check_dimension_vector(lam, r, N)
    return project(invert_q(compute_P(lam, r, orientation)), N)


@dataclass(frozen=True)
class WreathFamily:
    """Every function of one kind over a fiber, keyed by partition"""
    r: int
    core: Partition
    n: int
    kind: str
    members: Dict[Partition, TensorSymFunc]

    def __str__(self) -> str:
        lines = [f"{self.kind} family: r={self.r}, core=({self.core}), n={self.n}"]
        for lam, f in self.members.items():
            lines.append(f"  ({lam}): {f}")
        return "\n".join(lines)


def wreath_family(core: Partition, r: int, n: int, kind: str = "Hhat",
                  orientation: Orientation = DEFAULT_ORIENTATION) -> WreathFamily:
    """H~ (kind "Hhat") or P (kind "P") for every member of the fiber"""
    builders = {"Hhat": compute_Hhat, "P": compute_P}
    if kind not in builders:
        raise ValueError(f"unknown family kind {kind!r}; expected one of {sorted(builders)}")
    members = {lam: builders[kind](lam, r, orientation) for lam in fiber(core, r, n)}
    return WreathFamily(r, core, n, kind, members)
