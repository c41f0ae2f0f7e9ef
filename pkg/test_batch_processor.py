"""
Tests for batch verification of the eigen-equations
"""

import json
import os
import sys
import tempfile
import unittest
from unittest import mock

# Add parent directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from batch_processor import (
    FAIL, PASS, BatchVerifier, VerificationCase, load_grid, plan_cases, run_grid, summarize, verify_case,
    verify_theorem, write_reports,
)
from partitions import EMPTY, DimVector, Partition, PartitionError


def P(*parts):
    return Partition(tuple(parts))


class TestPlanning(unittest.TestCase):
    """Which (lambda, N) pairs get checked"""

    def test_rejects_non_core(self):
        """(2) is not a 2-core"""
        with self.assertRaises(PartitionError):
            plan_cases(2, P(2), 2)

    def test_rejects_incompatible_N(self):
        """(1,2) does not suit the empty 2-core"""
        with self.assertRaises(PartitionError):
            plan_cases(2, EMPTY, 1, N=DimVector((1, 2)))

    def test_skips_small_N(self):
        """n=2 needs N_i >= 2, so only n <= 1 is planned on (1,1)"""
        cases = plan_cases(2, EMPTY, 2, N=DimVector((1, 1)))
        self.assertEqual(len(cases), 3)
        self.assertTrue(all(case.lam.size <= 2 for case in cases))

    def test_minimal_vectors(self):
        """Without N each n gets its minimal compatible vector"""
        cases = plan_cases(2, P(1), 1, N_floor=1)
        self.assertEqual({str(case.N) for case in cases}, {"1,3"})
        self.assertEqual(len(cases), 3)


class TestVerifyCase(unittest.TestCase):
    """A single lambda"""

    def test_passes(self):
        """r=2, lambda=(2) on N=(1,1)"""
        reports = verify_case(P(2), 2, DimVector((1, 1)))
        self.assertEqual([report.status for report in reports], [PASS, PASS])
        self.assertEqual([report.i for report in reports], [0, 1])

    def test_symbolic(self):
        """Symbolic application agrees"""
        reports = verify_case(P(1, 1, 1), 2, DimVector((1, 3)), method="symbolic")
        self.assertTrue(all(report.passed for report in reports))
        self.assertEqual(reports[1].eigenvalue, "q*t^2")

    def test_failure_carries_witness(self):
        """Errors become failing reports"""
        reports = verify_case(P(1), 2, DimVector((1, 1)))
        self.assertEqual({report.status for report in reports}, {FAIL})
        self.assertIn("DefinitionError", reports[0].witness)

    def test_default_is_exact(self):
        """The default verdict never builds an evaluated operator matrix"""
        with mock.patch("batch_processor.operator_matrix", side_effect=AssertionError("matrix built")):
            reports = verify_case(P(2), 2, DimVector((1, 1)))
        self.assertEqual([report.status for report in reports], [PASS, PASS])

    def test_matrix_screen_is_not_the_verdict(self):
        """A wrong screen is logged, the exact residual still decides"""
        with mock.patch("batch_processor._screen_by_matrix", return_value=False):
            with self.assertLogs('batch_processor', level='WARNING') as logs:
                reports = verify_case(P(2), 2, DimVector((1, 1)), method="matrix")
        self.assertTrue(all(report.passed for report in reports))
        self.assertTrue(any("disagree" in line for line in logs.output))

    def test_matrix_screen_agrees(self):
        """The screen itself accepts a true eigenfunction"""
        reports = verify_case(P(1, 1), 2, DimVector((1, 1)), method="matrix")
        self.assertTrue(all(report.passed for report in reports))

    def test_unknown_method(self):
        """Only symbolic and matrix exist"""
        with self.assertRaises(ValueError):
            verify_case(P(2), 2, DimVector((1, 1)), method="numeric")

    def test_json(self):
        """lambda is spelled out in JSON"""
        report = verify_case(P(2), 1, DimVector((2,)))[0]
        data = json.loads(report.to_json())
        self.assertEqual(data["lambda"], "2")
        self.assertNotIn("lam", data)
        self.assertEqual(data["status"], PASS)


class TestBatch(unittest.TestCase):
    """Whole fibers"""

    def test_one_alphabet(self):
        """Classic theory up to two boxes on two variables"""
        reports = verify_theorem(1, EMPTY, 2, N=DimVector((2,)))
        self.assertEqual(len(reports), 4)
        self.assertTrue(all(report.passed for report in reports))

    def test_core_one(self):
        """r=2, core (1), n <= 1"""
        reports = verify_theorem(2, P(1), 1, N_floor=1)
        self.assertEqual(len(reports), 6)
        self.assertEqual(summarize(reports)["status"], PASS)

    def test_parallel_matches_inline(self):
        """Worker processes give the same reports in the same order"""
        cases = plan_cases(2, EMPTY, 1, N=DimVector((1, 1)))
        inline = BatchVerifier(1).process_batch(cases)
        parallel = BatchVerifier(2).process_batch(cases)
        self.assertEqual(inline['reports'], parallel['reports'])
        self.assertEqual(inline['total'], 3)
        self.assertEqual(len(inline['failed']), 0)

    def test_case_order(self):
        """Smaller partitions first, then larger parts first"""
        cases = [VerificationCase(lam, 1, DimVector((3,))) for lam in (P(1, 1), P(3), P(2))]
        ordered = sorted(cases, key=VerificationCase.sort_key)
        self.assertEqual([case.lam for case in ordered], [P(2), P(1, 1), P(3)])


@unittest.skipUnless(os.environ.get("WREATH_SLOW_TESTS") == "1", "set WREATH_SLOW_TESTS=1 for the full grid")
class TestAcceptanceGrid(unittest.TestCase):
    """The shipped grid verifies end to end"""

    def test_shipped_grid(self):
        """Every check in acceptance_grid.json passes"""
        path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "acceptance_grid.json")
        reports = run_grid(load_grid(path))
        self.assertTrue(reports)
        self.assertEqual(summarize(reports)["status"], PASS)


class TestReports(unittest.TestCase):
    """Report files and grids"""

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()

    def test_write(self):
        """One JSON line per report plus a summary line"""
        reports = verify_theorem(1, EMPTY, 1, N=DimVector((1,)))
        path = write_reports(reports, os.path.join(self.test_dir, "out", "report.jsonl"))
        with open(path, 'r', encoding='utf-8') as f:
            lines = f.read().splitlines()
        self.assertEqual(len(lines), len(reports) + 1)
        summary = json.loads(lines[-1])
        self.assertTrue(summary["summary"])
        self.assertEqual(summary["checks"], len(reports))
        self.assertEqual(summary["failed"], 0)

    def test_grid(self):
        """Grid files list entries under "grid" """
        path = os.path.join(self.test_dir, "grid.json")
        with open(path, 'w', encoding='utf-8') as f:
            json.dump({"grid": [{"r": 1, "core": "", "N": [2], "max_boxes": 1}]}, f)
        entries = load_grid(path)
        self.assertEqual(len(entries), 1)
        reports = run_grid(entries)
        self.assertEqual(len(reports), 2)
        self.assertTrue(all(report.passed for report in reports))

    def test_summary_counts(self):
        """Failures flip the status"""
        reports = verify_case(P(1), 2, DimVector((1, 1)))
        summary = summarize(reports)
        self.assertEqual(summary["status"], FAIL)
        self.assertEqual(summary["failed"], 2)


if __name__ == "__main__":
    unittest.main()
