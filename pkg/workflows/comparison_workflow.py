"""
Cross-method comparison workflow
Runs front-fixing and PSOR on the same contract and compares the boundaries
"""

import logging
from typing import Any, Dict

import pandas as pd

from solvers.boundary_comparison import compare_boundaries
from solvers.psor_solver import PsorOptions, solve_psor
from tools.run_config import RunConfig
from workflows.base_workflow import BaseWorkflow
from workflows.boundary_workflow import solve_front_fixing

logger = logging.getLogger(__name__)


def psor_options(config: RunConfig) -> PsorOptions:
    """PSOR grid from the extras psor_n, psor_m, omega, psor_tol, x_min, x_max"""
    defaults = PsorOptions()
    return PsorOptions(
        x_min=config.extra_float('x_min', defaults.x_min),
        x_max=config.extra_float('x_max', defaults.x_max),
        n=config.extra_int('psor_n', defaults.n),
        m=config.extra_int('psor_m', defaults.m),
        omega=config.extra_float('omega', defaults.omega),
        tol=config.extra_float('psor_tol', defaults.tol),
        surface_stride=config.extra_int('psor_m', defaults.m),
    )


class CompareWorkflow(BaseWorkflow):
    """Front-fixing versus PSOR boundary distances"""

    def __init__(self):
        super().__init__(
            name="CompareWorkflow",
            description="Discrete Linf and L1 distances between front-fixing and PSOR boundaries",
        )

    def run(self, config: RunConfig) -> Dict[str, Any]:
        """
        Run both solvers and compare on the front-fixing tau grid

        Args:
            config: Run parameters

        Returns:
            Dictionary with workflow results
        """
        results = self._start(config)
        stage = "front_fixing"
        try:
            report = solve_front_fixing(config)

            stage = "psor"
            psor = solve_psor(config.params, psor_options(config), config.avg)

            stage = "compare"
            comparison = compare_boundaries(report.boundary, psor.boundary)
            taus = report.boundary.taus
            front = 1.0 / report.boundary.rhos
            other = 1.0 / psor.boundary.rho_at(taus)
            frame = pd.DataFrame({
                't': config.params.T - taus,
                'tau': taus,
                'x_star_front_fixing': front,
                'x_star_psor': other,
                'difference': front - other,
            })
            results["frame"] = frame
            results["summary"] = {
                "r": config.params.r,
                "linf": comparison.linf,
                "l1": comparison.l1,
                "min_x_star_front_fixing": comparison.min_first,
                "min_x_star_psor": comparison.min_second,
                "psor_mean_sweeps": float(psor.sweeps_per_step.mean()),
                "guardrail_violations": (
                    report.guardrails.get("total_violations", 0) + psor.guardrails.get("total_violations", 0)
                ),
            }

            stage = "write"
            self._write(results, frame, config.out)
            results["success"] = True
            return results
        except Exception as e:
            return self._fail(results, stage, e)
