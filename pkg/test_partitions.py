"""
Tests for partition combinatorics: cores, quotients, dominance and compatibility
"""

import itertools
import os
import sys
import unittest

# Add parent directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from partitions import (
    EMPTY, DimVector, MultiPartition, Partition, PartitionError, RootElem, core_by_stripping, coroot_pairing,
    dominance_leq, fiber, from_core_and_quotient, is_compatible, is_core, kappa, kappa_cl, minimal_compatible,
    multipartitions, partitions_of, r_core, r_quotient, reversed_quotient, rim_hooks, wreath_comparable, wreath_leq,
)


def P(*parts):
    return Partition(tuple(parts))


class TestPartition(unittest.TestCase):
    """The Partition value type"""

    def test_rejects_increasing_parts(self):
        """Parts must be weakly decreasing"""
        with self.assertRaises(PartitionError):
            P(1, 2)

    def test_rejects_zero_parts(self):
        """Zero parts are only dropped through from_parts"""
        with self.assertRaises(PartitionError):
            P(2, 0)
        self.assertEqual(Partition.from_parts([2, 1, 0, 0]), P(2, 1))

    def test_conjugate(self):
        """Transpose of the diagram"""
        self.assertEqual(P(3, 1).conjugate(), P(2, 1, 1))
        self.assertEqual(EMPTY.conjugate(), EMPTY)

    def test_cells(self):
        """Cells are (column, row) pairs"""
        self.assertEqual(list(P(2, 1).cells()), [(0, 0), (1, 0), (0, 1)])

    def test_text(self):
        """Comma-separated parts, empty text for the empty partition"""
        self.assertEqual(str(P(3, 1, 1)), "3,1,1")
        self.assertEqual(str(EMPTY), "")
        self.assertEqual(str(MultiPartition((EMPTY, P(1)))), ";1")


class TestEnumeration(unittest.TestCase):
    """Partitions and multipartitions of n"""

    def test_reverse_lexicographic(self):
        """Largest first"""
        self.assertEqual(partitions_of(4), (P(4), P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1)))

    def test_counts(self):
        """p(n) and the number of r-multipartitions"""
        self.assertEqual([len(partitions_of(n)) for n in range(8)], [1, 1, 2, 3, 5, 7, 11, 15])
        self.assertEqual(len(multipartitions(2, 2)), 5)
        self.assertEqual(len(multipartitions(3, 2)), 10)
        self.assertEqual(len(multipartitions(2, 3)), 9)


class TestCoreQuotient(unittest.TestCase):
    """Abacus conventions and the core/quotient bijection"""

    def test_known_values(self):
        """Charge-0 beta numbers, component rho read from runner rho"""
        self.assertEqual(r_core(P(2, 1), 2), P(2, 1))
        self.assertEqual(r_quotient(P(2, 1), 2), MultiPartition.empty(2))
        self.assertEqual(r_quotient(P(2), 2), MultiPartition((EMPTY, P(1))))
        self.assertEqual(r_quotient(P(1, 1), 2), MultiPartition((P(1), EMPTY)))
        self.assertEqual(reversed_quotient(P(2), 2), MultiPartition((P(1), EMPTY)))

    def test_three_cores(self):
        """(2,1) has 3-core empty and quotient at the middle runner"""
        self.assertEqual(r_core(P(2, 1), 3), EMPTY)
        self.assertEqual(reversed_quotient(P(2, 1), 3), MultiPartition((EMPTY, P(1), EMPTY)))
        self.assertEqual(reversed_quotient(P(1, 1, 1), 2), MultiPartition((P(1), EMPTY)))

    def test_bijection_exhaustive(self):
        """lambda <-> (core, quotient) for all |lambda| <= 12, r <= 4"""
        for r in range(1, 5):
            for size in range(13):
                for lam in partitions_of(size):
                    core, quot = r_core(lam, r), r_quotient(lam, r)
                    self.assertTrue(is_core(core, r))
                    self.assertEqual(lam.size, core.size + r * quot.size)
                    self.assertEqual(from_core_and_quotient(core, quot, r), lam)

    def test_core_matches_rim_hook_stripping(self):
        """The abacus core agrees with removing rim hooks from the diagram"""
        for r in range(2, 5):
            for size in range(10):
                for lam in partitions_of(size):
                    self.assertEqual(core_by_stripping(lam, r), r_core(lam, r))

    def test_from_core_requires_core(self):
        """A non-core is rejected"""
        with self.assertRaises(PartitionError):
            from_core_and_quotient(P(2), MultiPartition.empty(2), 2)

    def test_fiber_size_and_order(self):
        """The fiber is in bijection with multipartitions and sorted largest first"""
        members = fiber(P(1), 2, 2)
        self.assertEqual(len(members), len(multipartitions(2, 2)))
        self.assertEqual(list(members), sorted(members, reverse=True))
        for lam in members:
            self.assertEqual(r_core(lam, 2), P(1))
            self.assertEqual(lam.size, 5)


class TestRimHooks(unittest.TestCase):
    """Removable rim hooks"""

    def test_row(self):
        """(3) loses a horizontal 2-hook"""
        self.assertEqual(rim_hooks(P(3), 2), [(P(1), 0)])

    def test_column(self):
        """(1,1,1) loses a vertical 2-hook of leg length 1"""
        self.assertEqual(rim_hooks(P(1, 1, 1), 2), [(P(1), 1)])

    def test_core_has_none(self):
        """(2,1) is a 2-core"""
        self.assertEqual(rim_hooks(P(2, 1), 2), [])


class TestRootLattice(unittest.TestCase):
    """kappa, pairing and dimension-vector compatibility"""

    def test_kappa(self):
        """Residue counts per class"""
        self.assertEqual(kappa(P(2, 1), 2), (1, 2))
        self.assertEqual(kappa_cl(P(2, 1), 2), RootElem((1,)))
        self.assertEqual(kappa_cl(P(1), 2), RootElem((-1,)))

    def test_kappa_constant_on_fibers(self):
        """kappa_cl only depends on the core"""
        for r in range(1, 5):
            for size in range(13):
                for lam in partitions_of(size):
                    self.assertEqual(kappa_cl(lam, r), kappa_cl(r_core(lam, r), r))

    def test_pairing(self):
        """Affine Cartan matrix with the alpha_0 coefficient set to 0"""
        self.assertEqual(coroot_pairing(1, RootElem((-1,)), 2), -2)
        self.assertEqual(coroot_pairing(0, RootElem((-1,)), 2), 2)
        self.assertEqual(coroot_pairing(1, RootElem((-1, -1)), 3), -1)

    def test_minimal_compatible(self):
        """r=2 core (1) gives (n, n+2); r=3 core (1) gives (n, n+1, n+2)"""
        self.assertEqual(minimal_compatible(kappa_cl(P(1), 2), 2, 3), DimVector((3, 5)))
        self.assertEqual(minimal_compatible(kappa_cl(P(1), 3), 3, 2), DimVector((2, 3, 4)))
        self.assertEqual(minimal_compatible(kappa_cl(EMPTY, 3), 3, 1), DimVector((1, 1, 1)))

    def test_compatibility(self):
        """Constant vectors suit the empty core only"""
        self.assertTrue(is_compatible(DimVector((2, 2)), kappa_cl(EMPTY, 2), 2))
        self.assertFalse(is_compatible(DimVector((2, 2)), kappa_cl(P(1), 2), 2))
        self.assertTrue(is_compatible(DimVector((4,)), kappa_cl(EMPTY, 1), 1))

    def test_rank_mismatch(self):
        """A class of the wrong rank is never compatible"""
        self.assertFalse(is_compatible(DimVector((1, 1)), RootElem((0, 0)), 2))
        self.assertFalse(is_compatible(DimVector((1, 1)), kappa_cl(EMPTY, 3), 2))


class TestDominance(unittest.TestCase):
    """Dominance and its restriction to a fiber"""

    def test_examples(self):
        """(2,2) <= (3,1) but (3,3) and (4,1,1) are incomparable"""
        self.assertTrue(dominance_leq(P(2, 2), P(3, 1)))
        self.assertFalse(dominance_leq(P(3, 1), P(2, 2)))
        self.assertFalse(dominance_leq(P(3, 3), P(4, 1, 1)))
        self.assertFalse(dominance_leq(P(4, 1, 1), P(3, 3)))

    def test_partial_order_axioms(self):
        """Reflexive, antisymmetric and transitive on partitions of 6"""
        shapes = partitions_of(6)
        for a in shapes:
            self.assertTrue(dominance_leq(a, a))
        for a, b in itertools.product(shapes, repeat=2):
            if dominance_leq(a, b) and dominance_leq(b, a):
                self.assertEqual(a, b)
        for a, b, c in itertools.product(shapes, repeat=3):
            if dominance_leq(a, b) and dominance_leq(b, c):
                self.assertTrue(dominance_leq(a, c))

    def test_wreath_order_needs_equal_core(self):
        """Different 2-cores are never comparable"""
        self.assertFalse(wreath_comparable(P(3), P(2, 1), 2))
        self.assertTrue(wreath_leq(P(1, 1), P(2), 2))


if __name__ == "__main__":
    unittest.main()
