#!/usr/bin/env python3
"""
Tests for the Monte Carlo oracle
"""

import sys
import os
import unittest
import logging

import numpy as np

# Add project root to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from analytics.integral_pricer import european_value
from analytics.lognormal_engine import arithmetic_moments, geometric_alpha_beta
from core.exceptions import DomainError
from core.model_core import AveragingSpec, ModelParams, OptionKind
from simulation.mc_oracle import (
    McSettings,
    estimates_frame,
    mc_european_value,
    mc_moments,
    mc_numeraire_check,
    simulate_paths,
)

# Setup basic logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

RUN_SLOW = bool(os.getenv('RUN_SLOW_TESTS'))


class TestMcMechanics(unittest.TestCase):
    """Test cases for seeding, blocking and input checks"""

    def setUp(self):
        self.params = ModelParams(r=0.06, q=0.04, sigma=0.2, T=2.0)
        self.avg = AveragingSpec.arithmetic()

    def test_worker_count_does_not_change_results(self):
        serial = McSettings(n_paths=5000, block_size=1000, workers=1, seed=7, steps_per_year=32)
        threaded = McSettings(n_paths=5000, block_size=1000, workers=2, seed=7, steps_per_year=32)
        first = mc_european_value(self.params, self.avg, 1.0, 0.9, settings=serial)
        second = mc_european_value(self.params, self.avg, 1.0, 0.9, settings=threaded)
        self.assertEqual(first.mean, second.mean)
        self.assertEqual(first.std_error, second.std_error)

    def test_seed_changes_results(self):
        first = simulate_paths(self.params, self.avg, 1.0, 0.9, 0.5, 16, 200, seed=1)
        second = simulate_paths(self.params, self.avg, 1.0, 0.9, 0.5, 16, 200, seed=2)
        self.assertEqual(first.shape, (200,))
        self.assertFalse(np.array_equal(first, second))

    def test_zero_horizon(self):
        settings = McSettings(n_paths=100, block_size=50)
        moments = mc_moments(self.params, self.avg, 1.0, 0.8, 1.0, settings=settings)
        self.assertEqual(moments['m1'].mean, 0.8)
        self.assertEqual(moments['m1'].std_error, 0.0)
        self.assertEqual(moments['m2'].mean, 0.8 ** 2)
        self.assertEqual(moments['log_mean'].mean, float(np.log(0.8)))
        self.assertEqual(moments['log_sd'].mean, 0.0)

    def test_zero_horizon_ignores_path_layout(self):
        for n_paths, block_size, antithetic in ((7, 3, False), (1000, 64, True)):
            settings = McSettings(n_paths=n_paths, block_size=block_size, antithetic=antithetic)
            moments = mc_moments(self.params, self.avg, 1.5, 0.7, 1.5, settings=settings)
            self.assertEqual(moments['m1'].mean, 0.7)
            self.assertEqual(moments['m1'].std_error, 0.0)
            self.assertEqual(moments['m1'].n_paths, n_paths)

    def test_deep_out_of_the_money_call(self):
        settings = McSettings(n_paths=2000, block_size=500, steps_per_year=64)
        estimate = mc_european_value(self.params, self.avg, 1.9, 50.0, OptionKind.CALL, settings=settings)
        self.assertEqual(estimate.mean, 0.0)

    def test_antithetic_needs_even_counts(self):
        settings = McSettings(n_paths=1001, block_size=500, antithetic=True)
        with self.assertRaises(DomainError):
            mc_european_value(self.params, self.avg, 1.0, 0.9, settings=settings)

    def test_invalid_inputs(self):
        settings = McSettings(n_paths=100, block_size=50)
        with self.assertRaises(DomainError):
            mc_european_value(self.params, self.avg, 0.0, 0.9, settings=settings)
        with self.assertRaises(DomainError):
            mc_european_value(self.params, self.avg, 1.0, -0.1, settings=settings)
        with self.assertRaises(DomainError):
            mc_european_value(self.params, self.avg, 3.0, 0.9, settings=settings)

    def test_estimates_frame(self):
        settings = McSettings(n_paths=400, block_size=100, steps_per_year=16)
        frame = estimates_frame(mc_moments(self.params, self.avg, 1.0, 0.9, 1.5, settings=settings))
        self.assertEqual(list(frame.columns), ['quantity', 'mean', 'std_error', 'n_paths', 'seed'])
        self.assertEqual(set(frame['quantity']), {'m1', 'm2', 'log_mean', 'log_sd'})


class TestMcAgainstClosedForms(unittest.TestCase):
    """Test cases comparing simulation with analytic results"""

    def test_vanishing_volatility_matches_first_moment(self):
        params = ModelParams(r=0.05, q=0.03, sigma=1e-8, T=3.0)
        settings = McSettings(n_paths=100, block_size=100, steps_per_year=512)
        moments = mc_moments(params, AveragingSpec.arithmetic(), 1.0, 0.9, 2.0, settings=settings)
        exact = arithmetic_moments(1.0, 2.0, 0.9, params)
        self.assertAlmostEqual(moments['m1'].mean, exact.m1, delta=1e-6)

    def test_numeraire_identity(self):
        params = ModelParams(r=0.06, q=0.02, sigma=0.3, T=2.0)
        settings = McSettings(n_paths=20000, block_size=5000, steps_per_year=8)
        estimate = mc_numeraire_check(params, 0.5, 2.0, settings=settings)
        self.assertLess(abs(estimate.mean - 1.0), 4.0 * estimate.std_error)

    def test_antithetic_reduces_error(self):
        params = ModelParams(r=0.06, q=0.04, sigma=0.2, T=2.0)
        plain = McSettings(n_paths=4000, block_size=1000, steps_per_year=16)
        paired = McSettings(n_paths=4000, block_size=1000, steps_per_year=16, antithetic=True)
        avg = AveragingSpec.arithmetic()
        first = mc_moments(params, avg, 1.0, 0.9, 2.0, settings=plain)['m1']
        second = mc_moments(params, avg, 1.0, 0.9, 2.0, settings=paired)['m1']
        self.assertLess(second.std_error, first.std_error)


@unittest.skipUnless(RUN_SLOW, "set RUN_SLOW_TESTS=1 for large path counts")
class TestMcMomentOracle(unittest.TestCase):
    """Moment and price checks at desk-scale path counts"""

    def setUp(self):
        self.settings = McSettings(n_paths=1_000_000, block_size=50000, steps_per_year=256)
        self.geometric_states = [
            (ModelParams(r=0.06, q=0.04, sigma=0.2, T=2.0), 1.0, 0.97),
            (ModelParams(r=0.05, q=0.0, sigma=0.3, T=3.0), 2.0, 1.1),
            (ModelParams(r=0.02, q=0.05, sigma=0.25, T=1.5), 0.5, 0.85),
        ]

    def test_arithmetic_moments(self):
        # the first case sits on the series branch r - q = sigma^2 / 2
        cases = [
            (ModelParams(r=0.06, q=0.04, sigma=0.2, T=5.0), 1.0, 0.9, 2.0),
            (ModelParams(r=0.05, q=0.0, sigma=0.2, T=5.0), 0.5, 1.1, 2.5),
            (ModelParams(r=0.02, q=0.05, sigma=0.3, T=5.0), 2.0, 0.8, 3.0),
            (ModelParams(r=0.08, q=0.01, sigma=0.25, T=5.0), 1.0, 0.95, 2.0),
        ]
        for params, t, x, u in cases:
            with self.subTest(r=params.r, q=params.q):
                estimates = mc_moments(params, AveragingSpec.arithmetic(), t, x, u, settings=self.settings)
                exact = arithmetic_moments(t, u, x, params)
                logger.info(f"m1 {estimates['m1'].mean:.6f} vs {exact.m1:.6f}, m2 {estimates['m2'].mean:.6f} vs {exact.m2:.6f}")
                self.assertLess(abs(estimates['m1'].mean - exact.m1), 3.0 * estimates['m1'].std_error + 1e-5)
                self.assertLess(abs(estimates['m2'].mean - exact.m2), 3.0 * estimates['m2'].std_error + 1e-5)

    def test_geometric_european_value(self):
        avg = AveragingSpec.geometric()
        for params, t, x in self.geometric_states:
            with self.subTest(r=params.r, q=params.q, x=x):
                estimate = mc_european_value(params, avg, t, x, OptionKind.CALL, settings=self.settings)
                exact = european_value(t, x, params, avg, OptionKind.CALL)
                logger.info(f"european {estimate.mean:.6f} +/- {estimate.std_error:.2e} vs {exact:.6f}")
                self.assertLess(abs(estimate.mean - exact), 3.0 * estimate.std_error + 1e-5)

    def test_geometric_log_spread(self):
        for params, t, x in self.geometric_states:
            u = 0.5 * (t + params.T)
            with self.subTest(r=params.r, q=params.q, x=x):
                estimates = mc_moments(params, AveragingSpec.geometric(), t, x, u, settings=self.settings)
                alpha, beta, _ = geometric_alpha_beta(t, u, x, params)
                self.assertLess(abs(estimates['log_mean'].mean - float(alpha)), 3.0 * estimates['log_mean'].std_error + 1e-5)
                self.assertLess(abs(estimates['log_sd'].mean - float(beta)), 3.0 * estimates['log_sd'].std_error + 1e-5)


if __name__ == "__main__":
    unittest.main()
