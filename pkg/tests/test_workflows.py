#!/usr/bin/env python3
"""
Tests for the command workflows on small grids
"""

import sys
import os
import tempfile
import unittest
import logging

# Add project root to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from tools.csv_tools import read_csv_with_header
from tools.run_config import build_run_config
from workflows import WORKFLOWS, CompareWorkflow, ExpiryWorkflow, HStarWorkflow, SurfaceWorkflow, ValueWorkflow
from workflows import BoundaryWorkflow, SweepWorkflow

# Setup basic logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')

SMALL_GRID = {'r': 0.06, 'q': 0.04, 'sigma': 0.2, 'T': 1.0, 'n': 60, 'm': 200, 'tol_fp': 1e-8}


class TestWorkflows(unittest.TestCase):
    """Test cases for workflow orchestration"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def out(self, name):
        return os.path.join(self.tmp.name, name)

    def test_every_command_has_a_workflow(self):
        self.assertEqual(
            set(WORKFLOWS), {'boundary', 'surface', 'compare', 'expiry', 'hstar', 'asymptote', 'sweep', 'value'}
        )

    def test_expiry(self):
        config = build_run_config('expiry', {'r': 0.06, 'q': 0.04, 'out': self.out('expiry.csv')})
        result = ExpiryWorkflow().run(config)
        self.assertTrue(result['success'])
        self.assertLess(result['summary']['x_star_T'], 1.0)
        header, frame = read_csv_with_header(result['outputs'][0])
        self.assertEqual(header['command'], 'expiry')
        self.assertEqual(len(frame), 1)

    def test_hstar(self):
        config = build_run_config('hstar', {'nodes': 128, 'out': self.out('h.csv')})
        result = HStarWorkflow().run(config)
        self.assertTrue(result['success'])
        self.assertAlmostEqual(result['summary']['h_star'], -0.638833, places=4)

    def test_sweep(self):
        config = build_run_config('sweep', {'steps': 3, 'out': self.out('sweep.csv')})
        result = SweepWorkflow().run(config)
        self.assertTrue(result['success'])
        self.assertEqual(result['summary']['points'], 9)

    def test_put_boundary_fails_at_solve(self):
        config = build_run_config('boundary', {**SMALL_GRID, 'kind': 'put', 'out': self.out('put.csv')})
        result = BoundaryWorkflow().run(config)
        self.assertFalse(result['success'])
        self.assertEqual(result['failed_stage'], 'solve')
        self.assertFalse(os.path.exists(self.out('put.csv')))

    def test_boundary(self):
        config = build_run_config('boundary', {**SMALL_GRID, 'out': self.out('boundary.csv')})
        result = BoundaryWorkflow().run(config)
        self.assertTrue(result['success'])
        self.assertEqual(list(result['frame'].columns), ['t', 'tau', 'rho', 'x_star'])
        self.assertEqual(len(result['frame']), 201)

    def test_surface_writes_slices(self):
        flags = {**SMALL_GRID, 'stride': 20, 'slices': '0.1,0.5,7', 'out': self.out('surface.csv')}
        result = SurfaceWorkflow().run(build_run_config('surface', flags))
        self.assertTrue(result['success'])
        self.assertEqual(result['summary']['slices'], [0.1, 0.5])
        self.assertEqual(len(result['outputs']), 2)
        header, _ = read_csv_with_header(self.out('surface_slices.csv'))
        self.assertEqual(header['section'], 'slices')

    def test_compare(self):
        flags = {**SMALL_GRID, 'psor_n': 100, 'psor_m': 200, 'out': self.out('compare.csv')}
        result = CompareWorkflow().run(build_run_config('compare', flags))
        self.assertTrue(result['success'])
        self.assertLess(result['summary']['linf'], 0.2)
        self.assertIn('difference', result['frame'].columns)

    def test_value_with_monte_carlo(self):
        flags = {**SMALL_GRID, 't': 0.5, 'x': 0.95, 'mc_paths': 2000, 'mc_steps': 32, 'out': self.out('value.csv')}
        result = ValueWorkflow().run(build_run_config('value', flags))
        self.assertTrue(result['success'])
        summary = result['summary']
        self.assertGreaterEqual(summary['american'], summary['european'])
        self.assertLess(abs(summary['european_mc'] - summary['european']), 5 * summary['european_mc_std_error'] + 1e-3)

    def test_value_rejects_bad_state(self):
        flags = {**SMALL_GRID, 'S': -1.0, 'A': 1.0, 'out': self.out('bad.csv')}
        result = ValueWorkflow().run(build_run_config('value', flags))
        self.assertFalse(result['success'])
        self.assertEqual(result['failed_stage'], 'state')


if __name__ == "__main__":
    unittest.main()
