#!/usr/bin/env python3
"""
Tests for the numerical guardrails and their monitor
"""

import sys
import os
import unittest
import logging

import numpy as np

# Add project root to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from guardrails import (
    BoundaryEnvelopeGuardrail,
    ComplementarityGuardrail,
    GuardrailChain,
    GuardrailMonitor,
    ObstacleGuardrail,
    PortfolioRangeGuardrail,
)

# Setup basic logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')


class TestGuardrails(unittest.TestCase):
    """Test cases for individual guardrails"""

    def test_portfolio_range(self):
        guardrail = PortfolioRangeGuardrail(eps=1e-6)
        payload = {'row': np.array([-1.0, -0.5, 0.0]), 'level': 3}
        returned, result = guardrail.process(payload)
        self.assertIs(returned, payload)
        self.assertFalse(result['violated'])

        _, result = guardrail.process({'row': np.array([-1.01, 0.0]), 'level': 4})
        self.assertTrue(result['violated'])
        self.assertAlmostEqual(result['magnitude'], 0.01 - 1e-6, places=12)
        self.assertEqual(guardrail.get_metrics()['violations'], 1)
        self.assertEqual(guardrail.get_metrics()['invocations'], 2)

    def test_obstacle(self):
        guardrail = ObstacleGuardrail()
        _, result = guardrail.process({'values': np.array([1.0, 0.5]), 'obstacle': np.array([1.0, 0.2])})
        self.assertFalse(result['violated'])
        _, result = guardrail.process({'values': np.array([0.9, 0.5]), 'obstacle': np.array([1.0, 0.2])})
        self.assertTrue(result['violated'])
        self.assertAlmostEqual(result['magnitude'], 0.1, places=12)

    def test_complementarity(self):
        guardrail = ComplementarityGuardrail(tol=1e-6)
        values = np.array([1.0, 0.6, 0.3])
        obstacle = np.array([1.0, 0.5, 0.0])
        _, result = guardrail.process({'values': values, 'obstacle': obstacle, 'residual': np.array([0.4, 0.0, 1e-9])})
        self.assertFalse(result['violated'])
        _, result = guardrail.process({'values': values, 'obstacle': obstacle, 'residual': np.array([0.0, 0.1, 0.0])})
        self.assertTrue(result['violated'])

    def test_boundary_envelope(self):
        guardrail = BoundaryEnvelopeGuardrail(low=0.0, high=1.0)
        _, result = guardrail.process({'boundary': 0.7, 'level': 1})
        self.assertFalse(result['violated'])
        _, result = guardrail.process({'boundary': float('nan'), 'level': 2})
        self.assertTrue(result['violated'])
        self.assertEqual(result['magnitude'], np.inf)


class TestGuardrailChain(unittest.TestCase):
    """Test cases for the chain and the monitor"""

    def setUp(self):
        self.monitor = GuardrailMonitor(max_events=2)
        self.chain = GuardrailChain([PortfolioRangeGuardrail(eps=0.0)], monitor=self.monitor)

    def test_violations_reach_monitor(self):
        for level in range(3):
            result = self.chain.process({'row': np.array([0.5]), 'level': level})
            self.assertTrue(result['violated'])
        self.chain.process({'row': np.array([-0.5]), 'level': 3})

        report = self.monitor.generate_audit_report()
        self.assertEqual(report['total_violations'], 3)
        self.assertEqual(report['by_guardrail'], {'portfolio_range': {'violation': 3}})
        self.assertEqual(len(self.monitor.events), 2)
        self.assertEqual(report['first_event']['details']['level'], 0)
        self.assertEqual(self.chain.get_metrics()['portfolio_range']['passes'], 1)


if __name__ == "__main__":
    unittest.main()
