"""
Wreath Macdonald Difference Operators
Selections (J, k), cyclic X-propagation, the coefficients A^(i), the shifts
T_{q,J}, and the operators M^(i), the classic Macdonald operator M and
Shoji's operator S acting on multi-symmetric polynomials
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import zip_longest
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from partitions import DimVector
from polynomials import (
    Alphabet, Factor, MultiSymPoly, PolynomialError, Substitution, VarId, XRational,
    alphabet, find_asymmetry, substitute_scaled, variable_name,
)
from scalars import QT, QT_RING, QTScalar, char_reduce, CharRingElem, q, t

logger = logging.getLogger(__name__)


class OperatorError(RuntimeError):
    """The operator output failed exact division or symmetry"""


class OperatorKind(str, Enum):
    WREATH = "wreath"
    CLASSIC = "classic"
    SHOJI = "shoji"


@dataclass(frozen=True)
class Selection:
    """Nonempty vertex set J with one slot k(j) per selected vertex"""
    J: Tuple[int, ...]
    slots: Tuple[int, ...]

    def __post_init__(self):
        if not self.J:
            raise ValueError("a selection needs at least one vertex")
        if len(self.J) != len(self.slots):
            raise ValueError(f"selection {self.J} has {len(self.slots)} slots")

    def k(self, j: int) -> int:
        return self.slots[self.J.index(j)]

    def selected(self) -> List[VarId]:
        return [(j, k) for j, k in zip(self.J, self.slots)]

    def __str__(self) -> str:
        vertices = ",".join(str(j) for j in self.J)
        slots = " ".join(f"k({j})={k}" for j, k in zip(self.J, self.slots))
        return f"J={{{vertices}}} {slots}"


@dataclass(frozen=True)
class PropagatedX:
    """Per vertex i: (source variable, m) meaning X^(i) = q^m * source"""
    values: Tuple[Tuple[VarId, int], ...]

    def source(self, i: int) -> VarId:
        return self.values[i % len(self.values)][0]

    def power(self, i: int) -> int:
        return self.values[i % len(self.values)][1]

    def label(self, i: int) -> str:
        name = variable_name(self.source(i))
        m = self.power(i)
        if m == 0:
            return name
        return f"q*{name}" if m == 1 else f"q^{m}*{name}"


def enumerate_selections(N: DimVector, i: int) -> List[Selection]:
    """All (J, k) with i-1 in J, smaller J first"""
    r = N.r
    required = (i - 1) % r
    others = [j for j in range(r) if j != required]
    found = []
    for size in range(0, r):
        for extra in itertools.combinations(others, size):
            J = tuple(sorted((required,) + extra))
            for slots in itertools.product(*(range(1, N[j] + 1) for j in J)):
                found.append(Selection(J, tuple(slots)))
    return found


def full_selections(N: DimVector) -> List[Selection]:
    """Selections with J = I"""
    J = tuple(range(N.r))
    return [Selection(J, tuple(slots)) for slots in itertools.product(*(range(1, N[j] + 1) for j in J))]


def propagate_X(sel: Selection, r: int) -> PropagatedX:
    values = []
    for i in range(r):
        for m in range(r):
            j = (i + m) % r
            if j in sel.J:
                values.append(((j, sel.k(j)), m))
                break
    return PropagatedX(tuple(values))


def shift_substitution(sel: Selection, r: int) -> Dict[VarId, Tuple[VarId, int]]:
    """x^(j)_{k(j)} -> q * X^(j+1) for every j in J"""
    propagated = propagate_X(sel, r)
    return {(j, sel.k(j)): (propagated.source(j + 1), propagated.power(j + 1) + 1) for j in sel.J}


def shift_T(sel: Selection, p: MultiSymPoly) -> MultiSymPoly:
    return substitute_scaled(p, shift_substitution(sel, p.N.r))


# Realizations: where the x-variables live while coefficients are built

class SymbolicRealization:
    """x-variables as generators of Z[q, t, x...]"""

    def __init__(self, letters: Alphabet):
        self.letters = letters
        self.field = letters.symbolic_field
        self.ring = self.field.ring
        self.q = self.ring.gens[0]
        self.t = self.ring.gens[1]

    def x(self, vid: VarId):
        return self.ring.gens[2 + self.letters.index[vid]]


class PointRealization:
    """x-variables replaced by integers; q and t stay symbolic in Z[q, t]"""

    def __init__(self, letters: Alphabet, values: Mapping[VarId, int]):
        self.letters = letters
        self.field = QT
        self.ring = QT_RING
        self.q = QT_RING.gens[0]
        self.t = QT_RING.gens[1]
        self.values = dict(values)

    def x(self, vid: VarId):
        return self.ring(self.values[vid])


Realization = Union[SymbolicRealization, PointRealization]


def _X(realization: Realization, propagated: PropagatedX, i: int):
    return realization.q ** propagated.power(i) * realization.x(propagated.source(i))


def _vertex_factors(numerators, denominators, one) -> Tuple[Factor, ...]:
    """Pair numerators with denominators in order, padding with 1"""
    factors = []
    for top, bottom in zip_longest(numerators, denominators, fillvalue=None):
        top_label, top_value = top if top is not None else ("1", one)
        bottom_label, bottom_value = bottom if bottom is not None else ("1", one)
        factors.append(Factor(f"{top_label}/{bottom_label}", top_value, bottom_value))
    return tuple(factors)


def coefficient_A(sel: Selection, i: int, N: DimVector,
                  realization: Optional[Realization] = None) -> XRational:
    """The coefficient A^(i) of a selection with i-1 in J, as grouped factors"""
    r = N.r
    i %= r
    if (i - 1) % r not in sel.J:
        raise ValueError(f"selection {sel} does not contain vertex {(i - 1) % r}")
    realization = realization or SymbolicRealization(alphabet(N))
    px = propagate_X(sel, r)
    X = {j: _X(realization, px, j) for j in range(r)}
    q_, t_, one = realization.q, realization.t, realization.ring.one
    x = realization.x

    groups = [("prefactor", (Factor(f"X^({i})/X^(0)", X[i], X[0]),))]

    cyclic = []
    for j in range(r):
        before = (j - 1) % r
        cyclic.append(Factor(f"X^({before})/(X^({before}) - t*X^({j}))", X[before], X[before] - t_ * X[j]))
    groups.append(("cyclic", tuple(cyclic)))

    # X^(j+1)/(X^(j+1) - q^-1 X^(j)) stored as q X^(j+1)/(q X^(j+1) - X^(j))
    shifted = []
    for j in sel.J:
        if j == (i - 1) % r:
            continue
        after = (j + 1) % r
        shifted.append(Factor(f"X^({after})/(X^({after}) - q^-1*X^({j}))",
                              q_ * X[after], q_ * X[after] - X[j]))
    groups.append(("q-shift", tuple(shifted)))

    outside, inside = [], []
    for j in range(r):
        before = (j - 1) % r
        numerators = [(f"(t*X^({j}) - {variable_name((before, l))})", t_ * X[j] - x((before, l)))
                      for l in range(1, N[before] + 1)]
        if j in sel.J:
            denominators = [(f"X^({j})", X[j])]
            denominators += [(f"(X^({j}) - {variable_name((j, l))})", X[j] - x((j, l)))
                             for l in range(1, N[j] + 1) if l != sel.k(j)]
            inside.append((f"vertex {j}", _vertex_factors(numerators, denominators, one)))
        else:
            denominators = [(f"(X^({j}) - {variable_name((j, l))})", X[j] - x((j, l)))
                            for l in range(1, N[j] + 1)]
            outside.append((f"vertex {j}", _vertex_factors(numerators, denominators, one)))
    groups.extend(outside)
    groups.extend(inside)
    return XRational(tuple(groups))


def _full_support_vertex_groups(sel: Selection, N: DimVector, realization: Realization, px: PropagatedX):
    r = N.r
    t_ = realization.t
    x = realization.x
    groups = []
    for j in range(r):
        after = (j + 1) % r
        X_after = _X(realization, px, after)
        X_here = _X(realization, px, j)
        factors = tuple(
            Factor(f"(t*X^({after}) - {variable_name((j, l))})/(X^({j}) - {variable_name((j, l))})",
                   t_ * X_after - x((j, l)), X_here - x((j, l)))
            for l in range(1, N[j] + 1) if l != sel.k(j))
        groups.append((f"vertex {j}", factors))
    return groups


def _require_full_support(sel: Selection, r: int):
    if tuple(sel.J) != tuple(range(r)):
        raise ValueError(f"selection {sel} does not have full support")


def coefficient_A_full_support(sel: Selection, i: int, N: DimVector,
                               realization: Optional[Realization] = None) -> XRational:
    """The J = I coefficient in its shortened form with the sign (-1)^r in front"""
    r = N.r
    i %= r
    _require_full_support(sel, r)
    realization = realization or SymbolicRealization(alphabet(N))
    px = propagate_X(sel, r)
    X = {j: _X(realization, px, j) for j in range(r)}
    one = realization.ring.one
    q_ = realization.q
    groups = [
        ("sign", (Factor("(-1)^r", one * (-1) ** r, one),)),
        ("prefactor", (Factor(f"X^({i})/X^(0)", X[i], X[0]),)),
    ]
    shifted = []
    for j in range(r):
        if j == (i - 1) % r:
            continue
        after = (j + 1) % r
        shifted.append(Factor(f"X^({after})/(X^({after}) - q^-1*X^({j}))",
                              q_ * X[after], q_ * X[after] - X[j]))
    groups.append(("q-shift", tuple(shifted)))
    groups.extend(_full_support_vertex_groups(sel, N, realization, px))
    return XRational(tuple(groups))


def shoji_coefficient(sel: Selection, N: DimVector, realization: Optional[Realization] = None) -> XRational:
    r = N.r
    _require_full_support(sel, r)
    realization = realization or SymbolicRealization(alphabet(N))
    px = propagate_X(sel, r)
    return XRational(tuple(_full_support_vertex_groups(sel, N, realization, px)))


def classic_coefficient(sel: Selection, N: DimVector, realization: Optional[Realization] = None) -> XRational:
    """prod_{l != k} (t x_k - x_l)/(x_k - x_l) for the single alphabet"""
    if N.r != 1:
        raise ValueError(f"the classic operator lives on one alphabet, got r={N.r}")
    realization = realization or SymbolicRealization(alphabet(N))
    k = sel.k(0)
    x = realization.x
    t_ = realization.t
    factors = tuple(
        Factor(f"(t*x_0_{k} - x_0_{l})/(x_0_{k} - x_0_{l})",
               t_ * x((0, k)) - x((0, l)), x((0, k)) - x((0, l)))
        for l in range(1, N[0] + 1) if l != k)
    return XRational((("product", factors),))


def operator_normalization(r: int) -> QTScalar:
    """((q - t)/q)^(r-1), the factor that makes M^(i) have eigenvalues e^(i)"""
    return ((q - t) / q) ** (r - 1)


@dataclass(frozen=True)
class OperatorTerm:
    sign: int
    selection: Selection
    propagated: PropagatedX
    coefficient: XRational
    substitution: Tuple[Tuple[VarId, Tuple[VarId, int]], ...]

    def substitution_map(self) -> Dict[VarId, Tuple[VarId, int]]:
        return dict(self.substitution)


def _as_dim_vector(N: Union[int, DimVector]) -> DimVector:
    return N if isinstance(N, DimVector) else DimVector((int(N),))


def operator_terms(kind: OperatorKind, i: int, N: DimVector,
                   realization: Optional[Realization] = None) -> Iterator[OperatorTerm]:
    """Stream the (sign, coefficient, shift) terms of one operator"""
    kind = OperatorKind(kind)
    r = N.r
    realization = realization or SymbolicRealization(alphabet(N))
    if kind == OperatorKind.WREATH:
        selections = enumerate_selections(N, i)
    elif kind == OperatorKind.CLASSIC:
        selections = enumerate_selections(N, 0)
    else:
        selections = full_selections(N)

    for sel in selections:
        if kind == OperatorKind.WREATH:
            sign = (-1) ** len(sel.J)
            coefficient = coefficient_A(sel, i, N, realization)
        elif kind == OperatorKind.CLASSIC:
            sign = 1
            coefficient = classic_coefficient(sel, N, realization)
        else:
            sign = 1
            coefficient = shoji_coefficient(sel, N, realization)
        substitution = shift_substitution(sel, r)
        yield OperatorTerm(sign, sel, propagate_X(sel, r), coefficient, tuple(sorted(substitution.items())))


def _canonical_factor(poly):
    """(key, sign) with key = sign * poly having a positive leading coefficient"""
    if poly.LC < 0:
        return -poly, -1
    return poly, 1


def _x_free(poly) -> bool:
    return all(not any(monom[2:]) for monom in poly.keys())


def _split_content(poly):
    """(content in Z[q,t], primitive part in x) of a polynomial of Z[q, t, x...]"""
    ring = poly.ring
    if _x_free(poly):
        return poly, ring.one
    groups: Dict = {}
    for monom, coeff in poly.terms():
        groups.setdefault(monom[2:], {})[monom[:2] + (0,) * (len(monom) - 2)] = coeff
    content = None
    for terms in groups.values():
        coefficient = ring.from_dict(terms)
        content = coefficient if content is None else content.gcd(coefficient)
    return content, poly.exquo(content)


def _denominator_keys(factor_denominator) -> List[Tuple[object, int]]:
    """Canonical pieces (key, sign) of one factor denominator; keys with x are primitive"""
    pieces = []
    for part in _split_content(factor_denominator):
        if part == 1:
            continue
        key, sign = _canonical_factor(part)
        pieces.append((key, sign))
    return pieces


def _shift_lifted(poly, letters: Alphabet, substitution: Substitution):
    """Apply x_v -> q^m x_w to a polynomial of Z[q, t, x...]"""
    moves = {2 + letters.index[source]: (2 + letters.index[target], power)
             for source, (target, power) in substitution.items()}
    result = {}
    for monom, coeff in poly.terms():
        exponents = list(monom[:2]) + [0] * (len(monom) - 2)
        for j in range(2, len(monom)):
            e = monom[j]
            if not e:
                continue
            target, power = moves.get(j, (j, 0))
            exponents[target] += e
            exponents[0] += power * e
        key = tuple(exponents)
        result[key] = result.get(key, 0) + coeff
    return poly.ring.from_dict(result)


def apply_operator(kind: OperatorKind, i: int, N: Union[int, DimVector], p: MultiSymPoly,
                   normalized: bool = True) -> MultiSymPoly:
    """Apply M^(i), M or S symbolically over one common denominator, then divide once"""
    kind = OperatorKind(kind)
    N = _as_dim_vector(N)
    if p.N != N:
        raise PolynomialError(f"input lives in N=({p.N}), operator in N=({N})")
    p.require_symmetric()

    letters = alphabet(N)
    realization = SymbolicRealization(letters)
    ring = realization.ring
    lifted = letters.to_symbolic(p.poly)
    p_numerator, p_denominator = lifted.numer, lifted.denom

    terms = list(operator_terms(kind, i, N, realization))
    logger.debug(f"{kind.value} operator at vertex {i} on N=({N}): {len(terms)} terms")

    # common denominator: each distinct factor to its largest multiplicity
    needed: Dict = {}
    prepared = []
    for term in terms:
        sign = term.sign
        counts: Dict = {}
        for factor in term.coefficient.factors():
            for key, factor_sign in _denominator_keys(factor.denominator):
                sign *= factor_sign
                counts[key] = counts.get(key, 0) + 1
        for key, count in counts.items():
            needed[key] = max(needed.get(key, 0), count)
        prepared.append((term, sign, counts))

    x_part = ring.one
    qt_part = ring.one
    for key, count in needed.items():
        if _x_free(key):
            qt_part *= key ** count
        else:
            x_part *= key ** count

    total = ring.zero
    for term, sign, counts in prepared:
        complement = ring.one
        for key, count in needed.items():
            missing = count - counts.get(key, 0)
            if missing:
                complement *= key ** missing
        shifted = _shift_lifted(p_numerator, letters, term.substitution_map())
        total += sign * term.coefficient.numerator * complement * shifted

    try:
        quotient = total.exquo(x_part)
    except Exception:
        logger.error(f"Denominator failed to clear for {kind.value} operator at vertex {i}, N=({N})")
        raise OperatorError(f"{kind.value} operator output is not a polynomial (exact division failed)")

    denominator = qt_part * p_denominator
    if normalized and kind == OperatorKind.WREATH:
        quotient *= (realization.q - realization.t) ** (N.r - 1)
        denominator *= realization.q ** (N.r - 1)
    if not _x_free(denominator):
        raise OperatorError("denominator does not clear")

    result = MultiSymPoly(N, letters.from_parts(quotient, denominator))
    violation = find_asymmetry(result)
    if violation is not None:
        first, second = violation
        logger.error(f"Operator output breaks symmetry under {variable_name(first)} <-> {variable_name(second)}")
        raise OperatorError(f"{kind.value} operator output is not symmetric under "
                            f"{variable_name(first)} <-> {variable_name(second)}")
    return result


def apply_M(i: int, N: DimVector, p: MultiSymPoly, normalized: bool = True) -> MultiSymPoly:
    return apply_operator(OperatorKind.WREATH, i, N, p, normalized)


def apply_classic_M(N: Union[int, DimVector], p: MultiSymPoly) -> MultiSymPoly:
    return apply_operator(OperatorKind.CLASSIC, 0, N, p)


def apply_shoji_S(N: DimVector, p: MultiSymPoly) -> MultiSymPoly:
    return apply_operator(OperatorKind.SHOJI, 0, N, p)


# Eigenvalues

def eigenvalue_character(lam: Sequence[int], N: DimVector) -> CharRingElem:
    """sum_{k=1}^{N} q^{lam_k} t^{N-k} chi^{k-lam_k}, lam padded with zeros"""
    total_variables = N.total
    length = sum(1 for part in lam if part)
    if length > total_variables:
        logger.error(f"Partition with {length} parts on {total_variables} variables")
        raise OperatorError(f"{length} parts exceed the {total_variables} variables of N=({N})")
    parts = list(lam) + [0] * max(0, total_variables - len(lam))
    value = CharRingElem.zero(N.r)
    for k in range(1, total_variables + 1):
        part = parts[k - 1]
        value = value + char_reduce(part, total_variables - k, k - part, N.r)
    return value


def eigenvalue(lam, i: int, N: DimVector, r: Optional[int] = None) -> QTScalar:
    """e^(i)_lam: the chi^i component of the eigenvalue character"""
    if r is not None and r != N.r:
        raise ValueError(f"r={r} does not match the dimension vector ({N})")
    parts = lam.parts if hasattr(lam, "parts") else tuple(lam)
    return eigenvalue_character(parts, N).component(i)


def format_term_trace(term: OperatorTerm, i: Optional[int] = None) -> List[str]:
    """Readable lines for one operator term"""
    r = len(term.propagated.values)
    lines = [f"selection {term.selection} sign={'+' if term.sign > 0 else '-'}1"]
    for j in range(r):
        lines.append(f"  X^({j}) = {term.propagated.label(j)}")
    heading = f"  A^({i}) factors:" if i is not None else "  coefficient factors:"
    lines.append(heading)
    for name, factors in term.coefficient.groups:
        if factors:
            lines.append(f"    {name}: " + " * ".join(factor.label for factor in factors))
    moves = []
    for source, (target, power) in term.substitution:
        scale = "q" if power == 1 else f"q^{power}"
        moves.append(f"{variable_name(source)} -> {scale}*{variable_name(target)}")
    lines.append("  T: " + ", ".join(moves))
    return lines
