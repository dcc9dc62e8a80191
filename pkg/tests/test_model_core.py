#!/usr/bin/env python3
"""
Tests for parameter types, averaging kernels and PDE coefficients
"""

import sys
import os
import unittest
import logging

import numpy as np
from pydantic import ValidationError

# Add project root to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.exceptions import DomainError
from core.model_core import (
    AveragingMethod,
    AveragingSpec,
    GridSpec,
    ModelParams,
    OptionKind,
    averaging_drift,
    convection_coefficient,
    reaction_coefficient,
)

# Setup basic logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


class TestModelParams(unittest.TestCase):
    """Test cases for parameter validation"""

    def test_rejects_non_positive_rate(self):
        with self.assertRaises(ValidationError):
            ModelParams(r=0.0, q=0.04, sigma=0.2, T=1.0)

    def test_rejects_negative_dividend(self):
        with self.assertRaises(ValueError):
            ModelParams(r=0.06, q=-0.01, sigma=0.2, T=1.0)

    def test_dividend_defaults_to_zero(self):
        self.assertEqual(ModelParams(r=0.06, sigma=0.2, T=1.0).q, 0.0)

    def test_scaled_parameters(self):
        scaled = ModelParams(r=0.06, q=0.04, sigma=0.2, T=4.0).scaled()
        self.assertAlmostEqual(scaled.r, 0.24)
        self.assertAlmostEqual(scaled.q, 0.16)
        self.assertAlmostEqual(scaled.sigma, 0.4)
        self.assertEqual(scaled.T, 1.0)

    def test_option_kind_sign(self):
        self.assertEqual(OptionKind.CALL.rho, 1)
        self.assertEqual(OptionKind.PUT.rho, -1)


class TestAveragingSpec(unittest.TestCase):
    """Test cases for the averaging operator description"""

    def test_weighted_requires_lambda(self):
        with self.assertRaises(ValidationError):
            AveragingSpec(method=AveragingMethod.WEIGHTED)

    def test_lambda_alias(self):
        spec = AveragingSpec(method='weighted', **{'lambda': 0.5})
        self.assertEqual(spec.lam, 0.5)

    def test_lambda_rejected_for_arithmetic(self):
        with self.assertRaises(ValidationError):
            AveragingSpec(method=AveragingMethod.ARITHMETIC, lam=1.0)


class TestAveragingDrift(unittest.TestCase):
    """Test cases for the drift kernels f(x, t)"""

    def setUp(self):
        self.x = np.array([0.5, 1.0, 2.0])

    def test_arithmetic(self):
        drift = averaging_drift(AveragingSpec.arithmetic(), self.x, 2.0)
        np.testing.assert_allclose(drift, [0.5, 0.0, -0.25])

    def test_geometric(self):
        drift = averaging_drift(AveragingSpec.geometric(), self.x, 2.0)
        np.testing.assert_allclose(drift, -np.log(self.x) / 2.0)

    def test_weighted_tends_to_arithmetic(self):
        weighted = averaging_drift(AveragingSpec.weighted(1e-9), self.x, 2.0)
        arithmetic = averaging_drift(AveragingSpec.arithmetic(), self.x, 2.0)
        np.testing.assert_allclose(weighted, arithmetic, rtol=1e-6)

    def test_weighted_normaliser(self):
        lam, t = 0.7, 3.0
        drift = averaging_drift(AveragingSpec.weighted(lam), 0.5, t)
        self.assertAlmostEqual(float(drift), lam / (1.0 - np.exp(-lam * t)), places=12)

    def test_domain_errors(self):
        with self.assertRaises(DomainError):
            averaging_drift(AveragingSpec.arithmetic(), 0.0, 1.0)
        with self.assertRaises(DomainError):
            averaging_drift(AveragingSpec.arithmetic(), 1.0, 0.0)


class TestCoefficients(unittest.TestCase):
    """Test cases for reaction and convection coefficients"""

    def setUp(self):
        self.params = ModelParams(r=0.06, q=0.04, sigma=0.2, T=10.0)
        self.xi = np.linspace(0.0, 2.0, 11)

    def test_arithmetic_reaction_is_constant(self):
        b = reaction_coefficient(AveragingSpec.arithmetic(), self.params, self.xi, 4.0, 1.3)
        np.testing.assert_allclose(b, 0.06 + 1.0 / 6.0)

    def test_geometric_reaction(self):
        b = reaction_coefficient(AveragingSpec.geometric(), self.params, self.xi, 4.0, 1.3)
        np.testing.assert_allclose(b, 0.06 + (self.xi - np.log(1.3) + 1.0) / 6.0)

    def test_reaction_needs_tau_below_maturity(self):
        with self.assertRaises(DomainError):
            reaction_coefficient(AveragingSpec.arithmetic(), self.params, self.xi, 10.0, 1.3)

    def test_convection(self):
        avg = AveragingSpec.arithmetic()
        a = convection_coefficient(avg, self.params, self.xi, 4.0, 1.3, 0.1)
        drift = averaging_drift(avg, np.exp(self.xi) / 1.3, 6.0)
        np.testing.assert_allclose(a, 0.1 + 0.02 - 0.02 - drift)


class TestGridSpec(unittest.TestCase):
    """Test cases for the uniform grid"""

    def test_steps(self):
        grid = GridSpec(n=200, m=1000, L=2.0)
        self.assertAlmostEqual(grid.h, 0.01)
        self.assertAlmostEqual(grid.time_step(50.0), 0.05)
        self.assertEqual(len(grid.xi_grid()), 201)
        self.assertEqual(grid.tau_grid(50.0)[-1], 50.0)

    def test_rejects_coarse_grid(self):
        with self.assertRaises(ValidationError):
            GridSpec(n=4, m=100, L=2.0)


if __name__ == "__main__":
    unittest.main()
