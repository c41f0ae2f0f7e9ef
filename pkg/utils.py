"""
Utility Functions for Wreath Macdonald Computations
Text parsing for partitions, multipartitions, dimension vectors and polynomials,
grid validation, and term-by-term comparison of results
"""

import json
import logging
import re
from typing import Dict, List, Optional, Tuple

from sympy import SympifyError, sympify

from partitions import DimVector, MultiPartition, Partition, PartitionError
from polynomials import MultiSymPoly, PolynomialError, alphabet
from scalars import Q_SYMBOL, T_SYMBOL, format_scalar

logger = logging.getLogger(__name__)

EMPTY_MARKERS = {"", "∅", "()", "empty"}


class ParseError(ValueError):
    """Malformed input text, with the character offset of the problem when known"""

    def __init__(self, message: str, position: Optional[int] = None, text: str = ""):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.reason = message
        self.position = position
        self.text = text


def _integer_tokens(text: str, separator: str = ",") -> List[Tuple[int, str]]:
    """(offset, token) pairs of a separated list, offsets into the original text"""
    tokens = []
    offset = 0
    for piece in text.split(separator):
        stripped = piece.strip()
        start = offset + (piece.find(stripped) if stripped else 0)
        tokens.append((start, stripped))
        offset += len(piece) + len(separator)
    return tokens


def parse_partition(text: str) -> Partition:
    """Comma-separated positive parts, weakly decreasing; empty text is the empty partition"""
    if text is None:
        raise ParseError("missing partition")
    stripped = text.strip()
    if stripped in EMPTY_MARKERS:
        return Partition()
    if stripped.startswith("(") and stripped.endswith(")"):
        stripped = stripped[1:-1]
    parts = []
    for position, token in _integer_tokens(stripped):
        if not re.fullmatch(r"\d+", token):
            raise ParseError(f"expected a positive integer, found {token!r}", position, text)
        value = int(token)
        if value == 0:
            raise ParseError("parts must be positive", position, text)
        if parts and value > parts[-1]:
            raise ParseError(f"parts must be weakly decreasing: {value} follows {parts[-1]}", position, text)
        parts.append(value)
    return Partition(tuple(parts))


def parse_multipartition(text: str, r: int) -> MultiPartition:
    """r partitions separated by ';'"""
    if text is None:
        raise ParseError("missing multipartition")
    pieces = text.split(";")
    if len(pieces) != r:
        raise ParseError(f"expected {r} components separated by ';', found {len(pieces)}", len(text), text)
    components = []
    offset = 0
    for piece in pieces:
        try:
            components.append(parse_partition(piece))
        except ParseError as e:
            raise ParseError(e.reason, offset + (e.position or 0), text)
        offset += len(piece) + 1
    return MultiPartition(tuple(components))


def parse_dim_vector(text: str) -> DimVector:
    """Comma-separated nonnegative counts N_0,...,N_{r-1}"""
    if text is None or not text.strip():
        raise ParseError("empty dimension vector")
    entries = []
    for position, token in _integer_tokens(text.strip()):
        if not re.fullmatch(r"\d+", token):
            raise ParseError(f"expected a nonnegative integer, found {token!r}", position, text)
        entries.append(int(token))
    return DimVector(tuple(entries))


def parse_polynomial(text: str, N: DimVector) -> MultiSymPoly:
    """Polynomial in q, t and x_i_k (with ^ or ** for powers) for the variables of N"""
    letters = alphabet(N)
    symbols = {"q": Q_SYMBOL, "t": T_SYMBOL}
    symbols.update({name: sympify(name) for name in letters.names})
    try:
        expr = sympify(text, locals=symbols)
    except (SympifyError, SyntaxError, TypeError) as e:
        raise ParseError(f"cannot parse polynomial {text!r}: {str(e)}", None, text)

    allowed = set(symbols)
    stray = {str(s) for s in getattr(expr, "free_symbols", set())} - allowed
    if stray:
        match = re.search("|".join(re.escape(name) for name in sorted(stray)), text)
        raise ParseError(f"unknown variables {sorted(stray)} for N=({N})", match.start() if match else None, text)

    try:
        poly = letters.ring.from_expr(expr)
    except Exception as e:
        raise ParseError(f"{text!r} is not a polynomial in the x-variables over Q(q,t): {str(e)}", None, text)
    return MultiSymPoly(N, poly)


def format_partition(lam: Partition) -> str:
    """Display form; the empty partition prints as ∅"""
    return str(lam) if lam.parts else "∅"


class GridValidator:
    """Validate acceptance-grid entries before running them"""

    REQUIRED_FIELDS = ["r", "max_boxes"]

    @classmethod
    def validate_structure(cls, entries: List[Dict]) -> Tuple[bool, List[str]]:
        errors = []
        for index, entry in enumerate(entries):
            for name in cls.REQUIRED_FIELDS:
                if name not in entry:
                    errors.append(f"entry {index}: missing required field {name!r}")
            if "r" in entry and (not isinstance(entry["r"], int) or entry["r"] < 1):
                errors.append(f"entry {index}: r must be a positive integer")
            if "core" in entry:
                try:
                    parse_partition(str(entry["core"]))
                except ParseError as e:
                    errors.append(f"entry {index}: core: {str(e)}")
            if entry.get("N") is not None and entry.get("N_floor") is not None:
                errors.append(f"entry {index}: give either N or N_floor, not both")
            if entry.get("N") is not None:
                try:
                    DimVector(tuple(entry["N"]))
                except (PartitionError, TypeError, ValueError) as e:
                    errors.append(f"entry {index}: N: {str(e)}")
        return len(errors) == 0, errors


class PolynomialComparator:
    """Compare two results term by term"""

    @staticmethod
    def compare(old: MultiSymPoly, new: MultiSymPoly) -> Dict:
        if old.N != new.N:
            raise PolynomialError(f"cannot compare N=({old.N}) with N=({new.N})")
        left = {str(monomial): coeff for monomial, coeff in old.terms()}
        right = {str(monomial): coeff for monomial, coeff in new.terms()}
        differences = {'added': {}, 'removed': {}, 'modified': {}}
        for key in sorted(set(left) | set(right)):
            if key not in left:
                differences['added'][key] = format_scalar(right[key])
            elif key not in right:
                differences['removed'][key] = format_scalar(left[key])
            elif left[key] != right[key]:
                differences['modified'][key] = {'old': format_scalar(left[key]), 'new': format_scalar(right[key])}
        return differences

    @staticmethod
    def agree(old: MultiSymPoly, new: MultiSymPoly) -> bool:
        return old.N == new.N and old.poly == new.poly


def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False)
