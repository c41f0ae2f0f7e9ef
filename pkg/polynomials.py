"""
Finite Multi-Symmetric Polynomials
The ring of polynomials in x^(i)_k over Q(q,t), its S_N-invariant subring,
monomial-symmetric bases, symmetry checks and exact evaluation helpers
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.fields import field as fraction_field
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing
from sympy.utilities.iterables import multiset_permutations

from partitions import DimVector, MultiPartition, Partition, multipartitions
from scalars import ONE, QT, QT_RING, ZERO, QTScalar, as_scalar, format_scalar, parse_scalar

logger = logging.getLogger(__name__)

VarId = Tuple[int, int]

K_DOMAIN = QT.to_domain()


class PolynomialError(ValueError):
    """Raised for non-symmetric input, failed exact division, or foreign rings"""

    def __init__(self, message: str, transposition: Optional[Tuple[VarId, VarId]] = None):
        super().__init__(message)
        self.transposition = transposition


def variable_name(vid: VarId) -> str:
    return f"x_{vid[0]}_{vid[1]}"


class Alphabet:
    """Variables x^(i)_k for a dimension vector, with the rings built on them"""

    def __init__(self, N: DimVector):
        self.N = N
        self.variables: List[VarId] = [(i, k) for i in range(N.r) for k in range(1, N[i] + 1)]
        self.names = [variable_name(vid) for vid in self.variables]
        self.index: Dict[VarId, int] = {vid: j for j, vid in enumerate(self.variables)}
        self.ring = PolyRing(tuple(self.names), K_DOMAIN, grlex)
        self._symbolic = None

    @property
    def size(self) -> int:
        return len(self.variables)

    def gen(self, vid: VarId) -> PolyElement:
        try:
            return self.ring.gens[self.index[vid]]
        except KeyError:
            raise PolynomialError(f"no variable {variable_name(vid)} for N=({self.N})")

    def vertex_variables(self, i: int) -> List[VarId]:
        return [(i % self.N.r, k) for k in range(1, self.N[i] + 1)]

    @property
    def symbolic_field(self):
        """Z(q, t, x...) with q, t as the first two generators"""
        if self._symbolic is None:
            self._symbolic = fraction_field(["q", "t"] + self.names, ZZ, grlex)[0]
        return self._symbolic

    def to_symbolic(self, p: PolyElement):
        """Lift a polynomial over Q(q,t) into Z(q, t, x...)"""
        target = self.symbolic_field
        common = QT_RING.one
        for coeff in p.values():
            common = common.lcm(coeff.denom)
        numerator = {}
        for monom, coeff in p.terms():
            scaled = coeff.numer * common.exquo(coeff.denom)
            for (a, b), c in scaled.terms():
                numerator[(a, b) + monom] = c
        denominator = {(a, b) + (0,) * self.size: c for (a, b), c in common.terms()}
        ring = target.ring
        return target((ring.from_dict(numerator), ring.from_dict(denominator)))

    def from_symbolic(self, value) -> PolyElement:
        """Inverse of to_symbolic; fails if the denominator involves any x"""
        return self.from_parts(value.numer, value.denom)

    def from_parts(self, numerator, denominator) -> PolyElement:
        """numerator / denominator for Z[q, t, x...] data with an x-free denominator"""
        qt_terms = {}
        for monom, c in denominator.terms():
            if any(monom[2:]):
                raise PolynomialError("denominator does not clear: it depends on the x-variables")
            qt_terms[monom[:2]] = c
        qt_denominator = QT_RING.from_dict(qt_terms)
        if not qt_denominator:
            raise PolynomialError("zero denominator")
        grouped: Dict[Tuple[int, ...], Dict[Tuple[int, int], int]] = {}
        for monom, c in numerator.terms():
            grouped.setdefault(monom[2:], {})[monom[:2]] = c
        terms = {x_monom: QT((QT_RING.from_dict(coeffs), qt_denominator))
                 for x_monom, coeffs in grouped.items()}
        return self.ring.from_dict(terms)


@lru_cache(maxsize=None)
def alphabet(N: DimVector) -> Alphabet:
    return Alphabet(N)


@dataclass(frozen=True)
class XMonomial:
    """Positive exponents keyed by variable identity"""
    exponents: Tuple[Tuple[VarId, int], ...]

    @classmethod
    def from_exponents(cls, letters: Alphabet, monom: Sequence[int]) -> "XMonomial":
        return cls(tuple((vid, e) for vid, e in zip(letters.variables, monom) if e))

    def __str__(self) -> str:
        if not self.exponents:
            return "1"
        return "*".join(variable_name(vid) if e == 1 else f"{variable_name(vid)}^{e}"
                        for vid, e in self.exponents)


def _format_coefficient_term(coeff: QTScalar, monomial: str) -> Tuple[bool, str]:
    """(negative, body) for one printed term"""
    text = format_scalar(coeff)
    single = coeff.denom == 1 and len(coeff.numer) == 1
    negative = single and text.startswith("-")
    if negative:
        text = text[1:]
    if monomial == "1":
        return negative, text
    if text == "1":
        return negative, monomial
    if single:
        return negative, f"{text}*{monomial}"
    if coeff.denom == 1:
        return False, f"({text})*{monomial}"
    return False, f"{text}*{monomial}"


@dataclass(frozen=True)
class MultiSymPoly:
    """A polynomial in the variables of N; symmetry is checked, not assumed"""
    N: DimVector
    poly: PolyElement

    def __post_init__(self):
        letters = alphabet(self.N)
        if self.poly.ring != letters.ring:
            raise PolynomialError(f"polynomial does not live in the ring for N=({self.N})")

    @classmethod
    def zero(cls, N: DimVector) -> "MultiSymPoly":
        return cls(N, alphabet(N).ring.zero)

    @classmethod
    def one(cls, N: DimVector) -> "MultiSymPoly":
        return cls(N, alphabet(N).ring.one)

    @property
    def letters(self) -> Alphabet:
        return alphabet(self.N)

    def is_zero(self) -> bool:
        return not self.poly

    def degrees(self) -> set:
        return {sum(monom) for monom in self.poly.keys()}

    def __add__(self, other: "MultiSymPoly") -> "MultiSymPoly":
        self._check(other)
        return MultiSymPoly(self.N, self.poly + other.poly)

    def __sub__(self, other: "MultiSymPoly") -> "MultiSymPoly":
        self._check(other)
        return MultiSymPoly(self.N, self.poly - other.poly)

    def __mul__(self, other: "MultiSymPoly") -> "MultiSymPoly":
        self._check(other)
        return MultiSymPoly(self.N, self.poly * other.poly)

    def scale(self, c: QTScalar) -> "MultiSymPoly":
        c = as_scalar(c)
        if not c:
            return MultiSymPoly.zero(self.N)
        return MultiSymPoly(self.N, self.poly.mul_ground(c))

    def map_coefficients(self, fn) -> "MultiSymPoly":
        terms = {monom: fn(coeff) for monom, coeff in self.poly.terms()}
        return MultiSymPoly(self.N, self.letters.ring.from_dict(terms))

    def _check(self, other: "MultiSymPoly"):
        if other.N != self.N:
            raise PolynomialError(f"dimension vectors differ: ({self.N}) vs ({other.N})")

    def terms(self) -> List[Tuple[XMonomial, QTScalar]]:
        """Terms in grlex order of the variables x_0_1 > x_0_2 > ... > x_{r-1}_{N}"""
        letters = self.letters
        return [(XMonomial.from_exponents(letters, monom), coeff) for monom, coeff in self.poly.terms()]

    def require_symmetric(self):
        violation = find_asymmetry(self)
        if violation is not None:
            first, second = violation
            raise PolynomialError(
                f"not symmetric under {variable_name(first)} <-> {variable_name(second)}", violation)

    def to_json_dict(self) -> Dict:
        return {
            "N": list(self.N.entries),
            "terms": [{"monomial": str(monomial), "coeff": format_scalar(coeff)}
                      for monomial, coeff in self.terms()],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "MultiSymPoly":
        N = DimVector(tuple(data["N"]))
        letters = alphabet(N)
        poly = letters.ring.zero
        for term in data.get("terms", []):
            poly += _parse_monomial(letters, term["monomial"]).mul_ground(parse_scalar(term["coeff"]))
        return cls(N, poly)

    def __str__(self) -> str:
        if not self.poly:
            return "0"
        text = ""
        for index, (monomial, coeff) in enumerate(self.terms()):
            negative, body = _format_coefficient_term(coeff, str(monomial))
            if index == 0:
                text = f"-{body}" if negative else body
            else:
                text += f" - {body}" if negative else f" + {body}"
        return text


def _parse_monomial(letters: Alphabet, text: str) -> PolyElement:
    value = letters.ring.one
    if text.strip() == "1":
        return value
    for factor in text.split("*"):
        name, _, power = factor.strip().partition("^")
        try:
            vid = letters.variables[letters.names.index(name)]
        except ValueError:
            raise PolynomialError(f"unknown variable {name!r} for N=({letters.N})")
        value *= letters.gen(vid) ** (int(power) if power else 1)
    return value


@dataclass(frozen=True)
class Factor:
    """One factor of a coefficient, with its printed X-notation"""
    label: str
    numerator: PolyElement
    denominator: PolyElement


@dataclass(frozen=True)
class XRational:
    """A coefficient kept as grouped factors until it is needed as a single fraction"""
    groups: Tuple[Tuple[str, Tuple[Factor, ...]], ...]

    def factors(self) -> List[Factor]:
        return [factor for _, factors in self.groups for factor in factors]

    @property
    def numerator(self):
        """Product of the numerators; the integer 1 for an empty product"""
        value = 1
        for factor in self.factors():
            value = factor.numerator * value
        return value

    @property
    def denominator(self):
        value = 1
        for factor in self.factors():
            value = factor.denominator * value
        return value

    def value(self, target_field):
        """The product as a canonical element of `target_field`"""
        if not self.factors():
            return target_field.one
        return target_field((self.numerator, self.denominator))


# Bases

def monomial_symmetric(letters: Alphabet, vertex: int, mu: Partition) -> PolyElement:
    return _monomial_symmetric(letters.N, vertex % letters.N.r, mu)


@lru_cache(maxsize=None)
def _monomial_symmetric(N: DimVector, vertex: int, mu: Partition) -> PolyElement:
    letters = alphabet(N)
    count = N[vertex]
    if mu.length > count:
        return letters.ring.zero
    positions = [letters.index[vid] for vid in letters.vertex_variables(vertex)]
    padded = list(mu.parts) + [0] * (count - mu.length)
    terms = {}
    for exponents in multiset_permutations(padded):
        monom = [0] * letters.size
        for position, e in zip(positions, exponents):
            monom[position] = e
        terms[tuple(monom)] = ONE
    return letters.ring.from_dict(terms)


@lru_cache(maxsize=None)
def monomial_basis_keys(N: DimVector, degree: int) -> Tuple[MultiPartition, ...]:
    """Multipartitions of `degree` whose component i has at most N_i rows"""
    return tuple(key for key in multipartitions(degree, N.r)
                 if all(key[i].length <= N[i] for i in range(N.r)))


@lru_cache(maxsize=None)
def monomial_basis(N: DimVector, degree: int) -> Tuple[MultiSymPoly, ...]:
    letters = alphabet(N)
    basis = []
    for key in monomial_basis_keys(N, degree):
        poly = letters.ring.one
        for i in range(N.r):
            poly *= monomial_symmetric(letters, i, key[i])
        basis.append(MultiSymPoly(N, poly))
    return tuple(basis)


def leading_exponents(N: DimVector, key: MultiPartition) -> Tuple[int, ...]:
    """Exponent vector x^(i)_1^{mu_1} x^(i)_2^{mu_2} ... of the basis element `key`"""
    letters = alphabet(N)
    monom = [0] * letters.size
    for i in range(N.r):
        for k, part in enumerate(key[i].parts, start=1):
            monom[letters.index[(i, k)]] = part
    return tuple(monom)


def expand_in_basis(p: MultiSymPoly, degree: int) -> Tuple[QTScalar, ...]:
    """Coordinates of p in monomial_basis(p.N, degree)"""
    if p.degrees() - {degree}:
        raise PolynomialError(f"polynomial is not homogeneous of degree {degree}")
    p.require_symmetric()
    keys = monomial_basis_keys(p.N, degree)
    coordinates = tuple(p.poly.get(leading_exponents(p.N, key), ZERO) for key in keys)
    rebuilt = p.letters.ring.zero
    for element, coordinate in zip(monomial_basis(p.N, degree), coordinates):
        if coordinate:
            rebuilt += element.poly.mul_ground(coordinate)
    if rebuilt != p.poly:
        raise PolynomialError(f"polynomial is not in the span of the degree-{degree} monomial basis")
    return coordinates


def combine_basis(N: DimVector, degree: int, coordinates: Sequence[QTScalar]) -> MultiSymPoly:
    """Inverse of expand_in_basis"""
    basis = monomial_basis(N, degree)
    if len(coordinates) != len(basis):
        raise PolynomialError(f"expected {len(basis)} coordinates, got {len(coordinates)}")
    poly = alphabet(N).ring.zero
    for element, coordinate in zip(basis, coordinates):
        if coordinate:
            poly += element.poly.mul_ground(as_scalar(coordinate))
    return MultiSymPoly(N, poly)


# Symmetry

def _swap(p: PolyElement, first: int, second: int) -> PolyElement:
    swapped = {}
    for monom, coeff in p.terms():
        exponents = list(monom)
        exponents[first], exponents[second] = exponents[second], exponents[first]
        swapped[tuple(exponents)] = coeff
    return p.ring.from_dict(swapped)


def find_asymmetry(p: MultiSymPoly) -> Optional[Tuple[VarId, VarId]]:
    """First adjacent same-vertex transposition that changes p, or None"""
    letters = p.letters
    for i in range(p.N.r):
        for k in range(1, p.N[i]):
            first, second = letters.index[(i, k)], letters.index[(i, k + 1)]
            if _swap(p.poly, first, second) != p.poly:
                return (i, k), (i, k + 1)
    return None


def is_symmetric(p: MultiSymPoly) -> bool:
    return find_asymmetry(p) is None


def symmetrize(p: MultiSymPoly) -> MultiSymPoly:
    """Average over S_{N_0} x ... x S_{N_{r-1}} (sum of distinct orbit images over orbit sizes)"""
    letters = p.letters
    result = {}
    for monom, coeff in p.poly.terms():
        orbit = _orbit(letters, monom)
        share = coeff / QT(len(orbit))
        for image in orbit:
            result[image] = result.get(image, ZERO) + share
    return MultiSymPoly(p.N, letters.ring.from_dict(result))


def _orbit(letters: Alphabet, monom: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    blocks = [[letters.index[vid] for vid in letters.vertex_variables(i)] for i in range(letters.N.r)]
    images = [list(monom)]
    for positions in blocks:
        grown = []
        for exponents in multiset_permutations([monom[j] for j in positions]):
            for image in images:
                candidate = list(image)
                for position, e in zip(positions, exponents):
                    candidate[position] = e
                grown.append(candidate)
        images = grown
    return [tuple(image) for image in images]


def exact_divide(p: PolyElement, d: PolyElement) -> PolyElement:
    """p / d when d divides p exactly"""
    if not d:
        raise PolynomialError("division by the zero polynomial")
    try:
        return p.exquo(d)
    except ExactQuotientFailed:
        raise PolynomialError("exact division failed: remainder is nonzero")


# Substitution and evaluation

Substitution = Mapping[VarId, Tuple[VarId, int]]


def substitute_scaled(p: MultiSymPoly, substitution: Substitution) -> MultiSymPoly:
    """Simultaneously replace each x_v by q^m x_w for v -> (w, m)"""
    letters = p.letters
    moves = {letters.index[source]: (letters.index[target], power)
             for source, (target, power) in substitution.items()}
    q_field = QT.gens[0]
    result = {}
    for monom, coeff in p.poly.terms():
        exponents = [0] * letters.size
        q_power = 0
        for j, e in enumerate(monom):
            if not e:
                continue
            target, power = moves.get(j, (j, 0))
            exponents[target] += e
            q_power += power * e
        key = tuple(exponents)
        value = coeff * q_field ** q_power if q_power else coeff
        result[key] = result.get(key, ZERO) + value
    return MultiSymPoly(p.N, letters.ring.from_dict(result))


def evaluate_at(p: MultiSymPoly, values: Sequence) -> QTScalar:
    """p at x_j = values[j], with values in ZZ[q,t]; one fraction is formed at the end"""
    common = QT_RING.one
    for coeff in p.poly.values():
        common = common.lcm(coeff.denom)
    total = QT_RING.zero
    for monom, coeff in p.poly.terms():
        term = coeff.numer * common.exquo(coeff.denom)
        for value, e in zip(values, monom):
            if e:
                term = term * value ** e
        total += term
    return QT((total, common))
