#!/usr/bin/env python3
"""
Tests for boundary distances and the near-expiry slope fit
"""

import sys
import os
import unittest
import logging

import numpy as np

# Add project root to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from analytics.integral_pricer import BoundaryCurve
from core.exceptions import DomainError
from solvers.boundary_comparison import compare_boundaries, fit_expiry_slope

# Setup basic logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')


def curve(T, x_of_tau, points=401):
    taus = np.linspace(0.0, T, points)
    return BoundaryCurve(T=T, taus=taus, rhos=1.0 / x_of_tau(taus))


class TestCompareBoundaries(unittest.TestCase):
    """Test cases for the discrete distances"""

    def setUp(self):
        self.T = 2.0
        self.base = curve(self.T, lambda tau: 0.9 - 0.1 * np.sqrt(tau))

    def test_self_comparison(self):
        result = compare_boundaries(self.base, self.base)
        self.assertEqual(result.linf, 0.0)
        self.assertEqual(result.l1, 0.0)
        self.assertEqual(result.n_points, 401)

    def test_constant_offset(self):
        shifted = curve(self.T, lambda tau: 0.9 - 0.1 * np.sqrt(tau) + 0.01)
        result = compare_boundaries(self.base, shifted)
        self.assertAlmostEqual(result.linf, 0.01, places=12)
        self.assertAlmostEqual(result.l1, 0.01 * self.T, places=12)
        self.assertAlmostEqual(result.min_second - result.min_first, 0.01, places=12)

    def test_coarser_second_curve(self):
        coarse = curve(self.T, lambda tau: 1.0 / (1.1 + 0.02 * tau), points=5)
        fine = curve(self.T, lambda tau: 1.0 / (1.1 + 0.02 * tau))
        result = compare_boundaries(fine, coarse)
        self.assertLess(result.linf, 1e-12)

    def test_maturity_mismatch(self):
        other = curve(1.0, lambda tau: 0.9 + 0.0 * tau)
        with self.assertRaises(DomainError):
            compare_boundaries(self.base, other)

    def test_grid_outside_common_range(self):
        with self.assertRaises(DomainError):
            compare_boundaries(self.base, self.base, taus=np.linspace(0.0, 3.0, 11))


class TestExpirySlopeFit(unittest.TestCase):
    """Test cases for the sqrt(T - t) regression"""

    def test_recovers_synthetic_slope(self):
        G, sigma, h = 0.98, 0.2, -0.638833
        boundary = curve(10.0, lambda tau: G * (1.0 + h * sigma * np.sqrt(tau)), points=2001)
        fit = fit_expiry_slope(boundary, G, sigma, fraction=0.02)
        self.assertAlmostEqual(fit.h_estimate, h, places=8)
        self.assertAlmostEqual(fit.intercept, G, places=10)
        self.assertIn(fit.n_points, (39, 40))

    def test_fraction_range(self):
        boundary = curve(1.0, lambda tau: 0.9 + 0.0 * tau)
        with self.assertRaises(DomainError):
            fit_expiry_slope(boundary, 0.9, 0.2, fraction=0.0)

    def test_too_few_points(self):
        boundary = curve(1.0, lambda tau: 0.9 + 0.0 * tau, points=11)
        with self.assertRaises(DomainError):
            fit_expiry_slope(boundary, 0.9, 0.2, fraction=0.05)


if __name__ == "__main__":
    unittest.main()
