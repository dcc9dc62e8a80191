#!/usr/bin/env python3
"""
Tests for run configuration parsing and merging
"""

import sys
import os
import tempfile
import unittest
import logging

# Add project root to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.config import GRID_CONFIG, MODEL_DEFAULTS
from core.exceptions import DomainError
from core.model_core import AveragingMethod, OptionKind
from tools.run_config import build_run_config, load_config_file, parse_config_text

# Setup basic logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')


class TestParseConfig(unittest.TestCase):
    """Test cases for the flat key = value format"""

    def test_comments_and_blank_lines(self):
        text = "# contract\n\nr = 0.05\nsigma=0.3  # annual\nT = 10\n"
        self.assertEqual(parse_config_text(text), {'r': '0.05', 'sigma': '0.3', 'T': '10'})

    def test_later_keys_win(self):
        self.assertEqual(parse_config_text("q = 0.01\nq = 0.02\n"), {'q': '0.02'})

    def test_malformed_lines(self):
        with self.assertRaises(DomainError):
            parse_config_text("r 0.05\n")
        with self.assertRaises(DomainError):
            parse_config_text(" = 0.05\n")

    def test_missing_file(self):
        with self.assertRaises(DomainError):
            load_config_file(os.path.join(tempfile.gettempdir(), "no-such-asian-config.cfg"))

    def test_load_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "run.cfg")
            with open(path, 'w', encoding='utf-8') as handle:
                handle.write("avg = geom\nkind = put\n")
            self.assertEqual(load_config_file(path), {'avg': 'geom', 'kind': 'put'})


class TestBuildRunConfig(unittest.TestCase):
    """Test cases for defaults, file values and flag overrides"""

    def test_defaults(self):
        config = build_run_config('boundary', {})
        self.assertEqual(config.params.r, MODEL_DEFAULTS['r'])
        self.assertEqual(config.grid.n, GRID_CONFIG['n'])
        self.assertEqual(config.avg.method, AveragingMethod(MODEL_DEFAULTS['averaging']))
        self.assertIsNone(config.out)
        self.assertEqual(config.extras, {})

    def test_override_order(self):
        file_values = {'r': '0.03', 'q': '0.01', 'T': '5'}
        flags = {'r': 0.04, 'q': None, 'sigma': 0.25}
        config = build_run_config('boundary', flags, file_values)
        self.assertEqual(config.params.r, 0.04)
        self.assertEqual(config.params.q, 0.01)
        self.assertEqual(config.params.sigma, 0.25)
        self.assertEqual(config.params.T, 5.0)

    def test_lambda_only_for_weighted(self):
        weighted = build_run_config('expiry', {'avg': 'weighted', 'lambda': 0.5})
        self.assertEqual(weighted.avg.lam, 0.5)
        self.assertEqual(weighted.header()['lambda'], 0.5)
        plain = build_run_config('expiry', {'avg': 'arith', 'lambda': 0.5})
        self.assertIsNone(plain.avg.lam)
        self.assertNotIn('lambda', plain.header())

    def test_extras_and_accessors(self):
        config = build_run_config(
            'surface', {'slices': '0.5, 1,2', 'stride': 10, 'overlay': 'true', 'tol_fp': 1e-9}
        )
        self.assertEqual(config.extra_floats('slices'), [0.5, 1.0, 2.0])
        self.assertEqual(config.extra_int('stride'), 10)
        self.assertTrue(config.extra_bool('overlay'))
        self.assertEqual(config.extra_float('tol_fp'), 1e-9)
        self.assertEqual(config.extra_float('missing', 3.0), 3.0)

    def test_header_order(self):
        config = build_run_config('value', {'r': 0.05, 'kind': 'put', 't': 1.0, 'A': 0.9})
        header = config.header()
        self.assertEqual(list(header)[:6], ['command', 'r', 'q', 'sigma', 'T', 'avg'])
        self.assertEqual(header['kind'], 'put')
        self.assertEqual(list(header)[-2:], ['A', 't'])
        self.assertEqual(config.kind, OptionKind.PUT)

    def test_invalid_values(self):
        for flags in ({'sigma': -1.0}, {'avg': 'harmonic'}, {'kind': 'straddle'}, {'n': 2}, {'r': 'abc'}):
            with self.subTest(flags=flags):
                with self.assertRaises(DomainError):
                    build_run_config('boundary', flags)

    def test_weighted_without_lambda(self):
        with self.assertRaises(DomainError):
            build_run_config('expiry', {'avg': 'weighted'})


if __name__ == "__main__":
    unittest.main()
