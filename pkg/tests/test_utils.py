"""
Tests for the numerical helpers, the thread pool and file input/output
"""
import logging
import math
import os
import shutil
import tempfile
import unittest

import numpy as np
import pandas as pd

from src.exceptions import DomainError
from src.utils.analysis import central_derivative, fitted_constant, log_slope, ratio_spread, smooth_transition
from src.utils.io import read_json, read_table, write_json, write_table
from src.utils.logging import VerdictsOnlyFilter
from src.utils.parallel import ordered_map


class TestAnalysis(unittest.TestCase):
    """Test cases for regressions and ratio statistics"""

    def test_log_slope(self):
        """Test the growth rate of e^{2t}"""
        t = [1.0, 2.0, 3.0, 4.0]
        self.assertAlmostEqual(log_slope(t, [math.exp(2 * x) for x in t]), 2.0, places=10)
        self.assertTrue(math.isnan(log_slope([1.0], [1.0])))

    def test_ratio_spread(self):
        """Test max/min with zero and empty inputs"""
        self.assertEqual(ratio_spread([1.0, 2.0, 4.0]), 4.0)
        self.assertEqual(ratio_spread([1.0, 0.0]), math.inf)
        self.assertTrue(math.isnan(ratio_spread([])))

    def test_fitted_constant(self):
        """Test the maximum ratio and the empty and infinite cases"""
        self.assertEqual(fitted_constant([1.0, -3.0], [1.0, 1.0]), 3.0)
        self.assertEqual(fitted_constant([1.0], [1.0], np.array([False])), 0.0)
        self.assertEqual(fitted_constant([1.0], [0.0]), math.inf)

    def test_central_derivative(self):
        """Test first and second differences of sin"""
        x = np.array([0.3, 1.2])
        np.testing.assert_allclose(central_derivative(np.sin, x, 1), np.cos(x), rtol=1e-8)
        np.testing.assert_allclose(central_derivative(np.sin, x, 2), -np.sin(x), rtol=1e-4)

    def test_smooth_transition(self):
        """Test the limits and the symmetry chi(x) + chi(1 - x) = 1"""
        x = np.linspace(-0.5, 1.5, 41)
        chi = smooth_transition(x)
        self.assertTrue(np.all(chi[x <= 0] == 0))
        self.assertTrue(np.all(chi[x >= 1] == 1))
        np.testing.assert_allclose(chi + smooth_transition(1 - x), 1.0, atol=1e-15)


class TestParallel(unittest.TestCase):
    """Test cases for the ordered thread pool"""

    def test_order_preserved(self):
        """Test that results follow the input order for any worker count"""
        items = list(range(50))
        for threads in (1, 4):
            self.assertEqual(ordered_map(lambda x: x * x, items, threads), [x * x for x in items])


class TestIO(unittest.TestCase):
    """Test cases for schema-tagged files"""

    def setUp(self):
        """Set up test fixtures"""
        self.workdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.workdir, ignore_errors=True)

    def test_schema_mismatch(self):
        """Test that a kernel table is not accepted as a profile"""
        path = os.path.join(self.workdir, "kernel.csv")
        write_table(pd.DataFrame({"s": [0.0, 1.0], "K": [1.0, 2.0]}), path, "kernel")
        with self.assertRaises(DomainError):
            read_table(path, "profile")
        self.assertEqual(list(read_table(path, "kernel").columns), ["s", "K"])

    def test_json_sanitized(self):
        """Test that non-finite numbers and numpy scalars are written as JSON values"""
        path = os.path.join(self.workdir, "report.json")
        write_json({"constant": float("inf"), "points": np.int64(3), "values": np.array([1.0, np.nan])},
                   path, "report")
        document = read_json(path)
        self.assertEqual(document["schema"], "hypwave.report/1")
        self.assertIsNone(document["constant"])
        self.assertEqual(document["points"], 3)
        self.assertEqual(document["values"], [1.0, None])


class TestLogging(unittest.TestCase):
    """Test cases for the quiet console filter"""

    def _record(self, level, message):
        return logging.LogRecord("hypwave", level, __file__, 1, message, None, None)

    def test_verdicts_only(self):
        """Test that only verdicts, written files and errors pass"""
        quiet = VerdictsOnlyFilter()
        self.assertTrue(quiet.filter(self._record(logging.INFO, "Verdict PASS: lemma51 on H3")))
        self.assertTrue(quiet.filter(self._record(logging.INFO, "Wrote 15 rows to phi.csv")))
        self.assertTrue(quiet.filter(self._record(logging.ERROR, "Missing input file")))
        self.assertFalse(quiet.filter(self._record(logging.INFO, "Kernel: t=1 on H3")))


if __name__ == '__main__':
    unittest.main()
