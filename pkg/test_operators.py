"""
Tests for the wreath Macdonald difference operators
"""

import os
import random
import sys
import unittest

# Add parent directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from macdonald import classic_eigenvalue
from partitions import EMPTY, DimVector, Partition, fiber, kappa_cl, minimal_compatible
from polynomials import MultiSymPoly, PolynomialError, alphabet, is_symmetric, monomial_basis
from operators import (
    OperatorError, OperatorKind, Selection, apply_M, apply_classic_M, apply_operator, apply_shoji_S,
    classic_coefficient, coefficient_A, coefficient_A_full_support, eigenvalue, eigenvalue_character,
    enumerate_selections, format_term_trace, full_selections, operator_normalization, operator_terms, propagate_X, shift_T,
)
from scalars import ONE, q, t


def variables(N: DimVector):
    letters = alphabet(N)
    return {name: letters.ring.gens[j] for j, name in enumerate(letters.names)}


class TestSelections(unittest.TestCase):
    """Enumeration of (J, k)"""

    def test_count(self):
        """r=3, N=(2,2,2), i=1: J contains 0, with 2 + 4 + 4 + 8 selections"""
        selections = enumerate_selections(DimVector((2, 2, 2)), 1)
        self.assertEqual(len(selections), 18)
        self.assertTrue(all(0 in sel.J for sel in selections))
        self.assertEqual(selections[0].J, (0,))

    def test_required_vertex_wraps(self):
        """i=0 requires vertex r-1"""
        selections = enumerate_selections(DimVector((1, 1, 1)), 0)
        self.assertTrue(all(2 in sel.J for sel in selections))
        self.assertEqual(len(selections), 4)

    def test_full_selections(self):
        """J = I with one slot per vertex"""
        self.assertEqual(len(full_selections(DimVector((2, 3)))), 6)

    def test_empty_selection_rejected(self):
        """J must be nonempty"""
        with self.assertRaises(ValueError):
            Selection((), ())


class TestPropagation(unittest.TestCase):
    """Cyclic X-propagation and the shift T_{q,J}"""

    def setUp(self):
        self.selection = Selection((0, 1), (1, 1))

    def test_propagate(self):
        """r=3, J={0,1}: X^(2) = q x_0_1"""
        propagated = propagate_X(self.selection, 3)
        self.assertEqual(propagated.label(0), "x_0_1")
        self.assertEqual(propagated.label(1), "x_1_1")
        self.assertEqual(propagated.label(2), "q*x_0_1")

    def test_trace(self):
        """Trace lines carry X-values and the shift"""
        N = DimVector((1, 1, 1))
        term = next(term for term in operator_terms(OperatorKind.WREATH, 1, N)
                    if term.selection == self.selection)
        lines = format_term_trace(term, 1)
        self.assertIn("  X^(2) = q*x_0_1", lines)
        self.assertIn("  T: x_0_1 -> q*x_1_1, x_1_1 -> q^2*x_0_1", lines)
        self.assertEqual(lines[0], "selection J={0,1} k(0)=1 k(1)=1 sign=+1")

    def test_shift(self):
        """T acts on polynomials by the substitution"""
        N = DimVector((1, 1, 1))
        x = variables(N)
        p = MultiSymPoly(N, x["x_0_1"] + x["x_2_1"])
        expected = MultiSymPoly(N, x["x_1_1"] * q + x["x_2_1"])
        self.assertEqual(shift_T(self.selection, p), expected)


class TestWorkedExample(unittest.TestCase):
    """r=3, N=(2,2,2), i=1 and the selection J={0,1}, k(0)=k(1)=1"""

    def setUp(self):
        self.N = DimVector((2, 2, 2))
        self.selection = Selection((0, 1), (1, 1))
        self.term = next(term for term in operator_terms(OperatorKind.WREATH, 1, self.N)
                         if term.selection == self.selection)

    def test_trace(self):
        """Every factor group of A^(1) is printed in X-notation"""
        self.assertEqual(format_term_trace(self.term, 1), [
            "selection J={0,1} k(0)=1 k(1)=1 sign=+1",
            "  X^(0) = x_0_1",
            "  X^(1) = x_1_1",
            "  X^(2) = q*x_0_1",
            "  A^(1) factors:",
            "    prefactor: X^(1)/X^(0)",
            "    cyclic: X^(2)/(X^(2) - t*X^(0)) * X^(0)/(X^(0) - t*X^(1)) * X^(1)/(X^(1) - t*X^(2))",
            "    q-shift: X^(2)/(X^(2) - q^-1*X^(1))",
            "    vertex 2: (t*X^(2) - x_1_1)/(X^(2) - x_2_1) * (t*X^(2) - x_1_2)/(X^(2) - x_2_2)",
            "    vertex 0: (t*X^(0) - x_2_1)/X^(0) * (t*X^(0) - x_2_2)/(X^(0) - x_0_2)",
            "    vertex 1: (t*X^(1) - x_0_1)/X^(1) * (t*X^(1) - x_0_2)/(X^(1) - x_1_2)",
            "  T: x_0_1 -> q*x_1_1, x_1_1 -> q^2*x_0_1",
        ])

    def test_value(self):
        """The grouped factors multiply out to the expected rational function"""
        field = alphabet(self.N).symbolic_field
        q_, t_, x01, x02, x11, x12, x21, x22 = field.gens
        X0, X1, X2 = x01, x11, q_ * x01
        expected = (X1 / X0
                    * X2 / (X2 - t_ * X0) * X0 / (X0 - t_ * X1) * X1 / (X1 - t_ * X2)
                    * X2 / (X2 - X1 / q_)
                    * (t_ * X2 - x11) / (X2 - x21) * (t_ * X2 - x12) / (X2 - x22)
                    * (t_ * X0 - x21) / X0 * (t_ * X0 - x22) / (X0 - x02)
                    * (t_ * X1 - x01) / X1 * (t_ * X1 - x02) / (X1 - x12))
        self.assertEqual(self.term.coefficient.value(field), expected)
        self.assertEqual(self.term.sign, 1)


class TestCoefficients(unittest.TestCase):
    """The coefficients A^(i)"""

    def test_full_support_form_agrees(self):
        """r=2, N=(1,1), i=1: both forms equal q x_1_1/(q x_0_1 - x_1_1)"""
        N = DimVector((1, 1))
        field = alphabet(N).symbolic_field
        q_, _, x0, x1 = field.gens
        selection = Selection((0, 1), (1, 1))
        long_form = coefficient_A(selection, 1, N).value(field)
        short_form = coefficient_A_full_support(selection, 1, N).value(field)
        self.assertEqual(long_form, short_form)
        self.assertEqual(long_form, q_ * x1 / (q_ * x0 - x1))

    def test_full_support_form_for_r3(self):
        """The shortened form agrees with the general one for every J = I selection"""
        N = DimVector((2, 1, 1))
        field = alphabet(N).symbolic_field
        for i in range(3):
            for selection in full_selections(N):
                self.assertEqual(coefficient_A(selection, i, N).value(field),
                                 coefficient_A_full_support(selection, i, N).value(field))

    def test_missing_vertex(self):
        """A^(i) needs i-1 in J"""
        with self.assertRaises(ValueError):
            coefficient_A(Selection((1,), (1,)), 1, DimVector((1, 1)))

    def test_classic_needs_one_alphabet(self):
        """The classic coefficient is defined for r=1 only"""
        with self.assertRaises(ValueError):
            classic_coefficient(Selection((0,), (1,)), DimVector((1, 1)))

    def test_normalization(self):
        """((q - t)/q)^(r-1)"""
        self.assertEqual(operator_normalization(1), ONE)
        self.assertEqual(operator_normalization(3), (q - t) ** 2 / q ** 2)


class TestApply(unittest.TestCase):
    """Operators on multi-symmetric polynomials"""

    def test_classic(self):
        """M(x_0_1 + x_0_2) = (qt + 1)(x_0_1 + x_0_2) on two variables"""
        N = DimVector((2,))
        x = variables(N)
        result = apply_classic_M(2, MultiSymPoly(N, x["x_0_1"] + x["x_0_2"]))
        self.assertEqual(str(result), "(q*t + 1)*x_0_1 + (q*t + 1)*x_0_2")

    def test_wreath_r2(self):
        """M^(0) on N=(1,1) sends x_0_1 + x_1_1 to x_0_1 + (q - t + qt) x_1_1"""
        N = DimVector((1, 1))
        x = variables(N)
        p = MultiSymPoly(N, x["x_0_1"] + x["x_1_1"])
        expected = MultiSymPoly(N, x["x_0_1"] + x["x_1_1"] * (q - t + q * t))
        self.assertEqual(apply_M(0, N, p), expected)

    def test_shoji_differs(self):
        """S acts on the same input as multiplication by q"""
        N = DimVector((1, 1))
        x = variables(N)
        p = MultiSymPoly(N, x["x_0_1"] + x["x_1_1"])
        shoji = apply_shoji_S(N, p)
        self.assertEqual(shoji, p.scale(q))
        self.assertFalse((apply_M(0, N, p) - shoji).is_zero())

    def test_eigenfunction(self):
        """x_0_1 on N=(1,3) is an eigenfunction of M^(1) with eigenvalue q t^2"""
        N = DimVector((1, 3))
        x = variables(N)
        p = MultiSymPoly(N, x["x_0_1"])
        self.assertEqual(apply_M(1, N, p), p.scale(q * t ** 2))
        self.assertEqual(eigenvalue((1, 1, 1), 1, N), q * t ** 2)

    def test_unnormalized(self):
        """Dropping the normalization divides by ((q - t)/q)^(r-1)"""
        N = DimVector((1, 1))
        x = variables(N)
        p = MultiSymPoly(N, x["x_0_1"] + x["x_1_1"])
        raw = apply_operator(OperatorKind.WREATH, 0, N, p, normalized=False)
        self.assertEqual(raw.scale(operator_normalization(2)), apply_M(0, N, p))

    def test_asymmetric_input(self):
        """Non-symmetric input is rejected before any work"""
        N = DimVector((2, 1))
        x = variables(N)
        with self.assertRaises(PolynomialError):
            apply_M(0, N, MultiSymPoly(N, x["x_0_1"]))

    def test_wrong_dimension_vector(self):
        """Input and operator must share N"""
        N = DimVector((1, 1))
        with self.assertRaises(PolynomialError):
            apply_M(0, DimVector((2, 2)), MultiSymPoly.one(N))


class TestSymmetricInputs(unittest.TestCase):
    """Random symmetric input stays symmetric and homogeneous"""

    CASES = (
        (DimVector((2, 2)), 3),
        (DimVector((1, 3)), 3),
        (DimVector((1, 1, 1)), 3),
        (DimVector((2, 1, 1)), 2),
    )

    def random_combination(self, rng: random.Random, N: DimVector, degree: int) -> MultiSymPoly:
        total = MultiSymPoly.zero(N)
        for element in monomial_basis(N, degree):
            coeff = rng.randint(-3, 3) + rng.randint(0, 2) * q - rng.randint(0, 1) * t
            total = total + element.scale(coeff)
        return total

    def test_random_combinations(self):
        """M^(i) of a seeded combination of monomial-symmetric functions"""
        rng = random.Random(20240611)
        for N, top in self.CASES:
            for degree in range(top + 1):
                p = self.random_combination(rng, N, degree)
                for i in range(N.r):
                    with self.subTest(N=str(N), degree=degree, i=i):
                        result = apply_M(i, N, p)
                        self.assertTrue(is_symmetric(result))
                        self.assertTrue(result.degrees() <= {degree})


class TestEigenvalues(unittest.TestCase):
    """Eigenvalue bookkeeping in the character ring"""

    def test_classic_eigenvalue(self):
        """r=1: e_(1) on two variables is qt + 1"""
        self.assertEqual(eigenvalue((1,), 0, DimVector((2,))), q * t + 1)

    def test_components(self):
        """r=2, N=(1,3), lam=(1,1,1)"""
        character = eigenvalue_character((1, 1, 1), DimVector((1, 3)))
        self.assertEqual(character.component(0), q * t ** 3 + q * t + 1)
        self.assertEqual(character.at_chi_one(), q * t ** 3 + q * t ** 2 + q * t + 1)

    def test_rank_check(self):
        """An explicit r must match N"""
        with self.assertRaises(ValueError):
            eigenvalue((1,), 0, DimVector((1, 1)), r=3)

    def test_too_many_parts(self):
        """A partition longer than the alphabet is an error, not a truncation"""
        with self.assertRaises(OperatorError):
            eigenvalue((1, 1, 1), 0, DimVector((1, 1)))
        with self.assertRaises(OperatorError):
            eigenvalue_character((2, 1, 1), DimVector((1, 1)))

    def test_collapse_to_classic(self):
        """Summing e^(i) over i at chi = 1 gives sum_k q^{lam_k} t^{N-k}"""
        grid = ((EMPTY, 2, 3), (Partition((1,)), 2, 3), (EMPTY, 3, 2), (Partition((1,)), 3, 2))
        for core, r, top in grid:
            for n in range(top + 1):
                N = minimal_compatible(kappa_cl(core, r), r, n)
                for lam in fiber(core, r, n):
                    with self.subTest(lam=str(lam), r=r, N=str(N)):
                        character = eigenvalue_character(lam.parts, N)
                        collapsed = sum((character.component(i) for i in range(r)), 0 * ONE)
                        self.assertEqual(collapsed, character.at_chi_one())
                        self.assertEqual(collapsed, classic_eigenvalue(lam, N.total))


if __name__ == "__main__":
    unittest.main()
