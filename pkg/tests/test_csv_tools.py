#!/usr/bin/env python3
"""
Tests for commented CSV output
"""

import io
import sys
import os
import tempfile
import unittest
import logging

import numpy as np
import pandas as pd

# Add project root to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from analytics.integral_pricer import BoundaryCurve
from core.exceptions import DomainError
from tools.csv_tools import read_boundary, read_csv_with_header, render_csv, sibling_path, write_csv

# Setup basic logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')


class TestCsvTools(unittest.TestCase):
    """Test cases for CSV rendering and reading"""

    def setUp(self):
        self.frame = pd.DataFrame({'tau': [0.0, 0.5, 1.0], 'rho': [1.02, 1.1, 1.25]})
        self.header = {'command': 'boundary', 'r': 0.06, 'T': 1.0}

    def test_header_lines_precede_columns(self):
        lines = render_csv(self.frame, self.header).splitlines()
        self.assertEqual(lines[:3], ['# command = boundary', '# r = 0.06', '# T = 1.0'])
        versions = [line for line in lines if line.startswith('# version.')]
        self.assertIn('# version.toolkit = 1.0.0', versions)
        self.assertEqual(lines[3 + len(versions)], 'tau,rho')
        self.assertEqual(lines[-1], '1,1.25')

    def test_identical_runs_give_identical_text(self):
        self.assertEqual(render_csv(self.frame, self.header), render_csv(self.frame, self.header))

    def test_stream_output(self):
        stream = io.StringIO()
        self.assertIsNone(write_csv(self.frame, None, self.header, stream=stream))
        self.assertTrue(stream.getvalue().startswith('# command = boundary\n'))

    def test_sibling_path(self):
        self.assertEqual(sibling_path(os.path.join('runs', 'out.csv'), 'slices'), os.path.join('runs', 'out_slices.csv'))
        self.assertEqual(sibling_path('out', 'slices'), 'out_slices.csv')
        self.assertIsNone(sibling_path(None, 'slices'))

    def test_boundary_file_round_trip(self):
        curve = BoundaryCurve(T=1.0, taus=np.linspace(0.0, 1.0, 11), rhos=np.linspace(1.02, 1.5, 11))
        with tempfile.TemporaryDirectory() as tmp:
            path = write_csv(curve.to_frame(), os.path.join(tmp, 'nested', 'b.csv'), {'command': 'boundary', 'T': 1.0})
            header, frame = read_csv_with_header(path)
            self.assertEqual(header['command'], 'boundary')
            self.assertEqual(list(frame.columns), ['t', 'tau', 'rho', 'x_star'])

            loaded = read_boundary(path)
            self.assertEqual(loaded.T, 1.0)
            np.testing.assert_allclose(loaded.rhos, curve.rhos, rtol=1e-9)

    def test_boundary_file_errors(self):
        with tempfile.TemporaryDirectory() as tmp:
            no_maturity = write_csv(self.frame, os.path.join(tmp, 'a.csv'), {'command': 'boundary'})
            with self.assertRaises(DomainError):
                read_boundary(no_maturity)
            self.assertEqual(read_boundary(no_maturity, T=1.0).T, 1.0)

            no_rho = write_csv(self.frame[['tau']], os.path.join(tmp, 'b.csv'), self.header)
            with self.assertRaises(DomainError):
                read_boundary(no_rho)
            with self.assertRaises(DomainError):
                read_boundary(os.path.join(tmp, 'missing.csv'))


if __name__ == "__main__":
    unittest.main()
