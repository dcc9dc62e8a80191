"""
Expiry workflows
Thin orchestrators over the expiry limit, h*, the near-expiry asymptote and
the (r, q) sweep of expiry limits
"""

import logging
from typing import Any, Dict

import numpy as np
import pandas as pd

from analytics.expiry_asymptotics import (
    asymptote_coefficients,
    expiry_limit,
    expiry_limit_sweep,
    solve_h_star,
)
from config.config import QUADRATURE_CONFIG
from solvers.boundary_comparison import fit_expiry_slope
from tools.run_config import RunConfig
from workflows.base_workflow import BaseWorkflow
from workflows.boundary_workflow import solve_front_fixing

logger = logging.getLogger(__name__)


class ExpiryWorkflow(BaseWorkflow):
    """Expiry limit x*_T of the boundary"""

    def __init__(self):
        super().__init__(name="ExpiryWorkflow", description="Limit of the boundary at expiry")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        results = self._start(config)
        stage = "limit"
        try:
            limit = expiry_limit(config.params, config.avg, config.kind)
            frame = pd.DataFrame([{
                'r': config.params.r,
                'q': config.params.q,
                'T': config.params.T,
                'avg': config.avg.method.value,
                'kind': config.kind.value,
                'x_star_T': limit.x_star_T,
                'branch': limit.branch.value,
            }])
            results["frame"] = frame
            results["summary"] = {"x_star_T": limit.x_star_T, "branch": limit.branch.value}

            stage = "write"
            self._write(results, frame, config.out)
            results["success"] = True
            return results
        except Exception as e:
            return self._fail(results, stage, e)


class HStarWorkflow(BaseWorkflow):
    """Universal near-expiry slope constant"""

    def __init__(self):
        super().__init__(name="HStarWorkflow", description="Root h* of the h-equation")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        results = self._start(config)
        stage = "solve"
        try:
            nodes = config.extra_int('nodes', QUADRATURE_CONFIG['h_star_nodes'])
            h_star = solve_h_star(nodes)
            frame = pd.DataFrame([{'h_star': h_star, 'quadrature_points': nodes}])
            results["frame"] = frame
            results["summary"] = {"h_star": h_star, "quadrature_points": nodes}

            stage = "write"
            self._write(results, frame, config.out)
            results["success"] = True
            return results
        except Exception as e:
            return self._fail(results, stage, e)


class AsymptoteWorkflow(BaseWorkflow):
    """Near-expiry expansion, optionally overlaid on the solved boundary"""

    def __init__(self):
        super().__init__(
            name="AsymptoteWorkflow",
            description="G (1 + h* sigma sqrt(T - t)) on a t grid, with optional front-fixing overlay",
        )

    def run(self, config: RunConfig) -> Dict[str, Any]:
        """
        Evaluate the asymptote

        Extras: points (t grid size, default 201), overlay (also solve the
        boundary), fraction (tail used for the slope fit, default 0.02).

        Returns:
            Dictionary with workflow results
        """
        results = self._start(config)
        stage = "coefficients"
        try:
            params = config.params
            coefficients = asymptote_coefficients(params, config.avg)
            summary: Dict[str, Any] = {
                "G": coefficients.G,
                "h_star": coefficients.h_star,
                "slope_coefficient": coefficients.h_star * params.sigma * coefficients.G,
            }

            stage = "evaluate"
            t = np.linspace(0.0, params.T, config.extra_int('points', 201))
            frame = pd.DataFrame({
                't': t,
                'tau': params.T - t,
                'x_star_asymptote': coefficients.evaluate(params.T - t),
            })

            if config.extra_bool('overlay'):
                stage = "overlay"
                report = solve_front_fixing(config)
                frame['x_star_solved'] = report.boundary.x_star(t)
                fit = fit_expiry_slope(
                    report.boundary, coefficients.G, params.sigma, config.extra_float('fraction', 0.02)
                )
                summary.update({"fitted_slope": fit.slope, "fitted_h": fit.h_estimate, "fit_points": fit.n_points})

            results["frame"] = frame
            results["summary"] = summary

            stage = "write"
            self._write(results, frame, config.out)
            results["success"] = True
            return results
        except Exception as e:
            return self._fail(results, stage, e)


class SweepWorkflow(BaseWorkflow):
    """Expiry limits over a rectangular (r, q) grid"""

    def __init__(self):
        super().__init__(name="SweepWorkflow", description="Expiry limit on an (r, q) grid")

    def run(self, config: RunConfig) -> Dict[str, Any]:
        """
        Extras: r_min, r_max, q_min, q_max, steps
        """
        results = self._start(config)
        stage = "sweep"
        try:
            frame = expiry_limit_sweep(
                (config.extra_float('r_min', 0.01), config.extra_float('r_max', 0.1)),
                (config.extra_float('q_min', 0.0), config.extra_float('q_max', 0.1)),
                config.avg,
                config.kind,
                config.extra_int('steps', 10),
                config.params.T,
            )
            results["frame"] = frame
            results["summary"] = {
                "points": len(frame),
                "min_x_star_T": float(frame['x_star_T'].min()),
                "max_x_star_T": float(frame['x_star_T'].max()),
            }

            stage = "write"
            self._write(results, frame, config.out)
            results["success"] = True
            return results
        except Exception as e:
            return self._fail(results, stage, e)
