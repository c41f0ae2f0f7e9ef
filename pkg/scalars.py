"""
Exact Scalars for Wreath Macdonald Computations
Canonical elements of Q(q,t), the q -> 1/q involution, a text codec, and the
character ring Z[q^±1, t^±1, chi]/(chi^r - 1) that carries eigenvalues
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Tuple, Union

from sympy import Poly, QQ, SympifyError, fraction, sympify, together
from sympy.polys.domains import ZZ
from sympy.polys.fields import FracElement, field
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement

logger = logging.getLogger(__name__)

# Q(q,t) as fractions of ZZ[q,t]; sympy cancels on construction and makes the
# leading coefficient of the denominator (grlex, q before t) positive.
QT, q, t = field("q,t", ZZ, grlex)
QT_RING = QT.ring
Q_SYMBOL, T_SYMBOL = QT.symbols

IntPoly2 = PolyElement
QTScalar = FracElement

ZERO = QT.zero
ONE = QT.one


class ScalarError(ArithmeticError):
    """Raised for undefined operations in Q(q,t)"""


class ScalarParseError(ValueError):
    """Raised when scalar text does not describe an element of Q(q,t)"""

    def __init__(self, message: str, text: str = ""):
        super().__init__(message)
        self.text = text


def as_scalar(value: Union[int, str, QTScalar, IntPoly2]) -> QTScalar:
    """Coerce integers, ZZ[q,t] polynomials, text or scalars into Q(q,t)"""
    if isinstance(value, FracElement):
        if value.field != QT:
            raise ScalarError(f"Scalar from a foreign field: {value.field}")
        return value
    if isinstance(value, PolyElement):
        return QT(value)
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScalarError(f"Cannot interpret {value!r} as an element of Q(q,t)")
    return QT(value)


def qt_div(a: QTScalar, b: QTScalar) -> QTScalar:
    """Exact division in Q(q,t); a zero divisor is reported, never propagated"""
    b = as_scalar(b)
    if not b:
        logger.error(f"Division by zero in Q(q,t): {format_scalar(as_scalar(a))} / 0")
        raise ScalarError("division by zero in Q(q,t)")
    return as_scalar(a) / b


def qt_sum(values: Iterable[QTScalar]) -> QTScalar:
    total = ZERO
    for value in values:
        total += value
    return total


def _reverse_in_q(p: IntPoly2) -> Tuple[IntPoly2, int]:
    """p(1/q) * q^deg_q(p), returned with deg_q(p)"""
    if not p:
        return p, 0
    degree = p.degree(0)
    reversed_terms = {(degree - a, b): c for (a, b), c in p.terms()}
    return QT_RING.from_dict(reversed_terms), degree


def qt_invert_q(a: QTScalar) -> QTScalar:
    """Substitute q -> 1/q and renormalize to canonical fraction form"""
    a = as_scalar(a)
    if not a:
        return a
    numer, numer_degree = _reverse_in_q(a.numer)
    denom, denom_degree = _reverse_in_q(a.denom)
    q_poly = QT_RING.gens[0]
    return QT((numer * q_poly ** denom_degree, denom * q_poly ** numer_degree))


def qt_evaluate(a: QTScalar, q_value: int, t_value: int) -> Tuple[int, int]:
    """Numerator and denominator values at integer q, t (unreduced)"""
    a = as_scalar(a)
    return (int(a.numer.evaluate([(QT_RING.gens[0], q_value), (QT_RING.gens[1], t_value)])),
            int(a.denom.evaluate([(QT_RING.gens[0], q_value), (QT_RING.gens[1], t_value)])))


def term_count(a: QTScalar) -> int:
    """Number of monomials in numerator and denominator, used as a pivot cost"""
    return len(a.numer) + len(a.denom)


# Text codec

def _format_monomial(a: int, b: int) -> str:
    pieces = []
    if a:
        pieces.append("q" if a == 1 else f"q^{a}")
    if b:
        pieces.append("t" if b == 1 else f"t^{b}")
    return "*".join(pieces)


def format_poly(p: IntPoly2) -> str:
    """Print a ZZ[q,t] polynomial with terms in grlex order, q before t"""
    if not p:
        return "0"
    ordered = sorted(p.terms(), key=lambda term: (-(term[0][0] + term[0][1]), -term[0][0]))
    text = ""
    for index, ((a, b), coeff) in enumerate(ordered):
        coeff = int(coeff)
        monomial = _format_monomial(a, b)
        magnitude = abs(coeff)
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{magnitude}*{monomial}"
        if index == 0:
            text = f"-{body}" if coeff < 0 else body
        else:
            text += f" - {body}" if coeff < 0 else f" + {body}"
    return text


def format_scalar(a: QTScalar) -> str:
    """Canonical text: `num` or `(num)/(den)`"""
    a = as_scalar(a)
    numer = format_poly(a.numer)
    if a.denom == 1:
        return numer
    return f"({numer})/({format_poly(a.denom)})"


def _expr_to_poly(expr) -> Tuple[IntPoly2, int]:
    """Integer polynomial and positive integer d with expr = poly / d"""
    poly = Poly(expr, Q_SYMBOL, T_SYMBOL, domain=QQ)
    denominator, poly = poly.clear_denoms(convert=True)
    terms = {monom: int(coeff) for monom, coeff in poly.terms()}
    return QT_RING.from_dict(terms), int(denominator)


def parse_scalar(text: str) -> QTScalar:
    """Parse integers, q, t, ^, *, /, +, - and parentheses into Q(q,t)"""
    if text is None or not str(text).strip():
        raise ScalarParseError("empty scalar", str(text))
    try:
        expr = sympify(str(text), locals={"q": Q_SYMBOL, "t": T_SYMBOL})
    except (SympifyError, SyntaxError, TypeError, ValueError) as e:
        raise ScalarParseError(f"cannot parse scalar {text!r}: {str(e)}", text)

    stray = {str(s) for s in getattr(expr, "free_symbols", set())} - {"q", "t"}
    if stray:
        raise ScalarParseError(f"unexpected symbols {sorted(stray)} in scalar {text!r}", text)

    try:
        numer_expr, denom_expr = fraction(together(expr))
        numer, numer_scale = _expr_to_poly(numer_expr)
        denom, denom_scale = _expr_to_poly(denom_expr)
    except Exception as e:
        raise ScalarParseError(f"scalar {text!r} is not a rational function of q, t: {str(e)}", text)

    if not denom:
        raise ScalarError(f"zero denominator in {text!r}")
    return QT((numer * denom_scale, denom * numer_scale))


# Character ring Z[q^±1, t^±1, chi]/(chi^r - 1)

@dataclass(frozen=True)
class CharRingElem:
    """Component i is the coefficient of chi^i; indices are read modulo r"""
    components: Tuple[QTScalar, ...]

    @classmethod
    def zero(cls, r: int) -> "CharRingElem":
        if r < 1:
            raise ScalarError(f"character ring needs r >= 1, got {r}")
        return cls(tuple(ZERO for _ in range(r)))

    @property
    def r(self) -> int:
        return len(self.components)

    def component(self, i: int) -> QTScalar:
        return self.components[i % self.r]

    def __add__(self, other: "CharRingElem") -> "CharRingElem":
        if other.r != self.r:
            raise ScalarError(f"character rings differ: r={self.r} vs r={other.r}")
        return CharRingElem(tuple(a + b for a, b in zip(self.components, other.components)))

    def at_chi_one(self) -> QTScalar:
        """Specialize chi -> 1"""
        return qt_sum(self.components)

    def __str__(self) -> str:
        pieces = [f"[{format_scalar(c)}]*chi^{i}" for i, c in enumerate(self.components) if c]
        return " + ".join(pieces) if pieces else "0"


def char_reduce(exponent_q: int, exponent_t: int, exponent_chi: int, r: int) -> CharRingElem:
    """q^a t^b chi^c as an element of the character ring"""
    element = CharRingElem.zero(r)
    components = list(element.components)
    components[exponent_chi % r] = q ** exponent_q * t ** exponent_t
    return CharRingElem(tuple(components))
