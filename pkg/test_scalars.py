"""
Tests for exact scalars in Q(q,t) and the character ring
"""

import os
import random
import sys
import unittest

# Add parent directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from scalars import (
    ONE, ZERO, CharRingElem, ScalarError, ScalarParseError, as_scalar, char_reduce, format_scalar, parse_scalar,
    q, qt_div, qt_evaluate, qt_invert_q, qt_sum, t, term_count,
)


class TestArithmetic(unittest.TestCase):
    """Field operations and canonical form"""

    def test_canonical_cancellation(self):
        """Equal rational functions compare equal after cancellation"""
        self.assertEqual((q ** 2 - t ** 2) / (q - t), q + t)

    def test_division_by_zero(self):
        """Dividing by zero raises instead of producing a value"""
        with self.assertRaises(ScalarError):
            qt_div(q, ZERO)

    def test_sum(self):
        """qt_sum adds a sequence"""
        self.assertEqual(qt_sum([q, t, ONE]), q + t + 1)

    def test_as_scalar(self):
        """Integers and text are coerced into Q(q,t)"""
        self.assertEqual(as_scalar(3), ONE * 3)
        self.assertEqual(as_scalar("q*t"), q * t)
        with self.assertRaises(ScalarError):
            as_scalar(1.5)

    def test_term_count(self):
        """Pivot cost counts monomials above and below the bar"""
        self.assertEqual(term_count((q * t - 1) / (t ** 2 - q)), 4)


class TestInvertQ(unittest.TestCase):
    """The q -> 1/q involution"""

    def test_monomial(self):
        """q maps to 1/q"""
        self.assertEqual(qt_invert_q(q), ONE / q)

    def test_rational_function(self):
        """(qt - 1)/(t^2 - q) maps to (t - q)/(qt^2 - 1)"""
        value = (q * t - 1) / (t ** 2 - q)
        self.assertEqual(qt_invert_q(value), (t - q) / (q * t ** 2 - 1))

    def test_involution(self):
        """Applying the map twice is the identity"""
        value = (q ** 3 * t + 2 * q - t) / (q * t ** 2 - 5)
        self.assertEqual(qt_invert_q(qt_invert_q(value)), value)

    def test_zero(self):
        """Zero is fixed"""
        self.assertEqual(qt_invert_q(ZERO), ZERO)


def random_scalar(rng: random.Random):
    """A small random element of Q(q,t), zero included"""
    def small_poly():
        value = ZERO
        for _ in range(rng.randint(1, 3)):
            value += rng.randint(-3, 3) * q ** rng.randint(0, 2) * t ** rng.randint(0, 2)
        return value

    denominator = small_poly()
    while not denominator:
        denominator = small_poly()
    return small_poly() / denominator


class TestFieldAxioms(unittest.TestCase):
    """Field laws on seeded random samples"""

    def setUp(self):
        self.rng = random.Random(20240611)
        self.samples = [tuple(random_scalar(self.rng) for _ in range(3)) for _ in range(25)]

    def test_associativity(self):
        """(a + b) + c = a + (b + c) and (ab)c = a(bc)"""
        for a, b, c in self.samples:
            self.assertEqual((a + b) + c, a + (b + c))
            self.assertEqual((a * b) * c, a * (b * c))

    def test_commutativity(self):
        """a + b = b + a and ab = ba"""
        for a, b, _ in self.samples:
            self.assertEqual(a + b, b + a)
            self.assertEqual(a * b, b * a)

    def test_distributivity(self):
        """a(b + c) = ab + ac"""
        for a, b, c in self.samples:
            self.assertEqual(a * (b + c), a * b + a * c)

    def test_inverses(self):
        """a - a = 0 and a / a = 1 away from zero"""
        for a, b, _ in self.samples:
            self.assertEqual(a - a, ZERO)
            self.assertEqual(a + (-a), ZERO)
            if a:
                self.assertEqual(a * qt_div(ONE, a), ONE)
                self.assertEqual(qt_div(b, a) * a, b)

    def test_invert_q_is_a_homomorphism(self):
        """q -> 1/q respects sums and products and squares to the identity"""
        for a, b, _ in self.samples:
            self.assertEqual(qt_invert_q(a + b), qt_invert_q(a) + qt_invert_q(b))
            self.assertEqual(qt_invert_q(a * b), qt_invert_q(a) * qt_invert_q(b))
            self.assertEqual(qt_invert_q(qt_invert_q(a)), a)


class TestTextCodec(unittest.TestCase):
    """Printing and parsing of scalars"""

    def test_format_polynomial(self):
        """Polynomials print without a denominator, q before t"""
        self.assertEqual(format_scalar(q * t - 1), "q*t - 1")
        self.assertEqual(format_scalar(q ** 2 * t + 3 * t ** 2), "q^2*t + 3*t^2")

    def test_format_fraction(self):
        """Fractions print as (num)/(den)"""
        self.assertEqual(format_scalar(ONE / (q - t)), "(1)/(q - t)")

    def test_round_trip(self):
        """Printed scalars parse back to the same value"""
        for value in [ZERO, ONE, q * t - 1, (q * t - 1) / (t ** 2 - q), -q / (3 * t + 1)]:
            self.assertEqual(parse_scalar(format_scalar(value)), value)

    def test_parse_negative_power(self):
        """Caret powers and negative exponents are accepted"""
        self.assertEqual(parse_scalar("q^-1*t"), t / q)

    def test_parse_rational_coefficients(self):
        """Rational numbers clear into the canonical fraction"""
        self.assertEqual(parse_scalar("q/2 + 1/3"), (3 * q + 2) / 6)

    def test_parse_rejects_other_symbols(self):
        """Only q and t may appear"""
        with self.assertRaises(ScalarParseError):
            parse_scalar("q + x")

    def test_parse_rejects_empty(self):
        """Empty text is not a scalar"""
        with self.assertRaises(ScalarParseError):
            parse_scalar("   ")

    def test_evaluate(self):
        """Numerator and denominator values at integer points"""
        self.assertEqual(qt_evaluate((q + t) / (q - t), 3, 1), (4, 2))


class TestCharRing(unittest.TestCase):
    """Z[q^±1, t^±1, chi]/(chi^r - 1)"""

    def test_reduce_exponent(self):
        """chi exponents are read modulo r"""
        element = char_reduce(1, 2, 5, 3)
        self.assertEqual(element.component(2), q * t ** 2)
        self.assertEqual(element.component(0), ZERO)

    def test_negative_exponents(self):
        """Negative exponents of chi and q are allowed"""
        element = char_reduce(-1, 0, -1, 2)
        self.assertEqual(element.component(1), ONE / q)

    def test_addition_and_specialization(self):
        """Adding and setting chi = 1"""
        total = char_reduce(1, 0, 0, 2) + char_reduce(0, 1, 1, 2)
        self.assertEqual(total.component(-1), t)
        self.assertEqual(total.at_chi_one(), q + t)

    def test_rank_mismatch(self):
        """Elements of different rings cannot be added"""
        with self.assertRaises(ScalarError):
            CharRingElem.zero(2) + CharRingElem.zero(3)


if __name__ == "__main__":
    unittest.main()
