"""
Classic Macdonald Polynomials
The one-alphabet P_lambda(x; q, t) by Gram-Schmidt against the q,t-Hall
pairing; the r = 1 reference for the wreath computations
"""

import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from partitions import DimVector, MultiPartition, Partition, partitions_of
from polynomials import MultiSymPoly
from scalars import ONE, QT, ZERO, QTScalar, q, t
from symfunc import Basis, TensorSymFunc, convert_basis, project, z_factor

logger = logging.getLogger(__name__)


def _power_norm(rho: Partition) -> QTScalar:
    """<p_rho, p_rho>_{q,t} = z_rho * prod (1 - q^rho_i)/(1 - t^rho_i)"""
    value = QT(z_factor(rho))
    for part in rho.parts:
        value *= (ONE - q ** part) / (ONE - t ** part)
    return value


def qt_hall_pairing(f: TensorSymFunc, g: TensorSymFunc) -> QTScalar:
    """The q,t-deformed Hall pairing on one alphabet; power sums are orthogonal"""
    if f.r != 1 or g.r != 1:
        raise ValueError("the q,t-Hall pairing is defined on one alphabet (r = 1)")
    left = convert_basis(f, Basis.POWER)
    right = convert_basis(g, Basis.POWER)
    total = ZERO
    for key, value in left.coefficients.items():
        other = right.coefficients.get(key)
        if other is not None:
            total += value * other * _power_norm(key[0])
    return total


def _monomial(lam: Partition) -> TensorSymFunc:
    return TensorSymFunc.unit(MultiPartition((lam,)), Basis.MONOMIAL)


@lru_cache(maxsize=None)
def _gram_schmidt(n: int) -> Tuple[Tuple[Partition, Tuple[QTScalar, ...]], ...]:
    """Monomial coordinates of P_lambda for all lambda of n, smallest in dominance first"""
    shapes = list(reversed(partitions_of(n)))
    monomials = [_monomial(lam) for lam in shapes]
    gram = [[qt_hall_pairing(a, b) for b in monomials] for a in monomials]

    def pair(u: List[QTScalar], v: List[QTScalar]) -> QTScalar:
        total = ZERO
        for a, x in enumerate(u):
            if not x:
                continue
            for b, y in enumerate(v):
                if y:
                    total += x * gram[a][b] * y
        return total

    found: List[List[QTScalar]] = []
    for index in range(len(shapes)):
        vector = [ONE if j == index else ZERO for j in range(len(shapes))]
        for earlier in found:
            projection = pair(vector, earlier) / pair(earlier, earlier)
            vector = [v - projection * e for v, e in zip(vector, earlier)]
        found.append(vector)
    logger.debug(f"Gram-Schmidt for n={n}: {len(shapes)} classic Macdonald polynomials")
    return tuple((lam, tuple(vector)) for lam, vector in zip(shapes, found))


def classic_P(lam: Partition) -> TensorSymFunc:
    """P_lambda in the monomial basis, with coefficient 1 on m_lambda"""
    table = _gram_schmidt(lam.size)
    shapes = [shape for shape, _ in table]
    vector = dict(table)[lam]
    return TensorSymFunc(1, Basis.MONOMIAL, {MultiPartition((mu,)): c for mu, c in zip(shapes, vector)})


def classic_P_finite(lam: Partition, N: int) -> MultiSymPoly:
    return project(classic_P(lam), DimVector((N,)))


def classic_eigenvalue(lam: Partition, N: int) -> QTScalar:
    """sum_k q^{lam_k} t^{N-k}, the eigenvalue of the classic operator on P_lambda"""
    total = ZERO
    for k in range(1, N + 1):
        total += q ** lam.part(k - 1) * t ** (N - k)
    return total


def classic_table(n: int) -> Dict[Partition, TensorSymFunc]:
    return {lam: classic_P(lam) for lam in partitions_of(n)}
