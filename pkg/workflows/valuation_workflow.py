"""
Valuation workflow
Splits the American price into European part and early exercise premium
"""

import logging
from typing import Any, Dict

import numpy as np
import pandas as pd

from analytics.integral_pricer import price_decomposition
from core.exceptions import DomainError
from simulation.mc_oracle import McSettings, mc_european_value
from tools.csv_tools import read_boundary
from tools.run_config import RunConfig
from workflows.base_workflow import BaseWorkflow
from workflows.boundary_workflow import solve_front_fixing

logger = logging.getLogger(__name__)


class ValueWorkflow(BaseWorkflow):
    """Price decomposition at one state (t, S, A)"""

    def __init__(self):
        super().__init__(
            name="ValueWorkflow",
            description="European value, early exercise premium and American price",
        )

    def run(self, config: RunConfig) -> Dict[str, Any]:
        """
        Price one state

        Extras: t, S, A (or x = A/S with S = 1), boundary_file, mc_paths, mc_steps.

        Args:
            config: Run parameters

        Returns:
            Dictionary with workflow results
        """
        results = self._start(config)
        stage = "state"
        try:
            params = config.params
            t = config.extra_float('t', 0.5 * params.T)
            if 'x' in config.extras:
                S, A = 1.0, config.extra_float('x')
            else:
                S, A = config.extra_float('S', 1.0), config.extra_float('A', 1.0)
            if not (S > 0 and A > 0):
                raise DomainError(f"S and A must be positive, got S={S}, A={A}")
            x = A / S

            stage = "boundary"
            boundary_file = config.extras.get('boundary_file')
            if boundary_file:
                boundary = read_boundary(boundary_file, params.T)
            else:
                boundary = solve_front_fixing(config).boundary

            stage = "price"
            parts = price_decomposition(t, x, boundary, params, config.avg, config.kind)
            scale = S * np.exp(params.q * t)
            rows = [
                {'quantity': 'european', 'value': parts.european},
                {'quantity': 'premium', 'value': parts.premium},
                {'quantity': 'american', 'value': parts.total},
                {'quantity': 'price', 'value': scale * parts.total},
            ]
            summary: Dict[str, Any] = {
                "t": t, "S": S, "A": A, "x": x,
                "european": parts.european, "premium": parts.premium,
                "american": parts.total, "price": scale * parts.total,
            }

            mc_paths = config.extra_int('mc_paths')
            if mc_paths:
                stage = "monte_carlo"
                estimate = mc_european_value(
                    params, config.avg, t, x, config.kind,
                    n_steps=config.extra_int('mc_steps'),
                    settings=McSettings(n_paths=mc_paths, seed=config.seed),
                )
                rows.append({'quantity': 'european_mc', 'value': estimate.mean})
                rows.append({'quantity': 'european_mc_std_error', 'value': estimate.std_error})
                summary.update({"european_mc": estimate.mean, "european_mc_std_error": estimate.std_error})

            frame = pd.DataFrame(rows, columns=['quantity', 'value'])
            results["frame"] = frame
            results["summary"] = summary

            stage = "write"
            self._write(results, frame, config.out)
            results["success"] = True
            return results
        except Exception as e:
            return self._fail(results, stage, e)
