#!/usr/bin/env python3
"""
Tests for the Thomas algorithm
"""

import sys
import os
import unittest
import logging

import numpy as np

# Add project root to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.exceptions import PivotBreakdownError
from solvers.tridiagonal import is_diagonally_dominant, solve_tridiagonal

# Setup basic logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


def dense(lower, diag, upper):
    return np.diag(diag) + np.diag(lower[1:], -1) + np.diag(upper[:-1], 1)


class TestThomas(unittest.TestCase):
    """Test cases for the tridiagonal solver"""

    def setUp(self):
        rng = np.random.default_rng(11)
        self.size = 60
        self.lower = rng.uniform(-1.0, 0.0, self.size)
        self.upper = rng.uniform(-1.0, 0.0, self.size)
        self.diag = 2.5 + rng.uniform(0.0, 1.0, self.size)
        self.rhs = rng.normal(size=self.size)

    def test_matches_dense_solve(self):
        x = solve_tridiagonal(self.lower, self.diag, self.upper, self.rhs)
        expected = np.linalg.solve(dense(self.lower, self.diag, self.upper), self.rhs)
        np.testing.assert_allclose(x, expected, atol=1e-12, rtol=0)

    def test_residual(self):
        x = solve_tridiagonal(self.lower, self.diag, self.upper, self.rhs)
        residual = dense(self.lower, self.diag, self.upper) @ x - self.rhs
        self.assertLess(np.max(np.abs(residual)), 1e-12)

    def test_zero_pivot(self):
        diag = self.diag.copy()
        diag[0] = 0.0
        with self.assertRaises(PivotBreakdownError) as caught:
            solve_tridiagonal(self.lower, diag, self.upper, self.rhs, grid={'n': 60})
        self.assertEqual(caught.exception.row, 0)
        self.assertEqual(caught.exception.details['n'], 60)

    def test_shape_mismatch(self):
        with self.assertRaises(ValueError):
            solve_tridiagonal(self.lower[:-1], self.diag, self.upper, self.rhs)

    def test_diagonal_dominance(self):
        self.assertEqual(is_diagonally_dominant(self.lower, self.diag, self.upper), (True, -1))
        diag = self.diag.copy()
        diag[5] = 0.1
        lower = self.lower.copy()
        lower[5] = -0.5
        self.assertEqual(is_diagonally_dominant(lower, diag, self.upper), (False, 5))


if __name__ == "__main__":
    unittest.main()
