"""
Boundary and surface workflows
Run the front-fixing solver and export the boundary curve or the portfolio surface
"""

import logging
from typing import Any, Dict, Optional

import numpy as np

from config.config import OUTPUT_CONFIG
from core.exceptions import DomainError
from core.model_core import OptionKind
from solvers.front_fixing_solver import FrontFixingOptions, SolverReport, solve
from tools.csv_tools import sibling_path
from tools.run_config import RunConfig
from workflows.base_workflow import BaseWorkflow

logger = logging.getLogger(__name__)


def solve_front_fixing(config: RunConfig, surface_stride: Optional[int] = None) -> SolverReport:
    """
    Front-fixing solve for the call described by a run config

    Args:
        config: Run parameters; extras tol_fp and p_max tune the fixed point
        surface_stride: Keep every stride-th portfolio row; defaults to first and last only

    Returns:
        SolverReport
    """
    if config.kind is not OptionKind.CALL:
        raise DomainError("the front-fixing scheme solves the call boundary only")
    defaults = FrontFixingOptions()
    opts = FrontFixingOptions(
        tol_fp=config.extra_float('tol_fp', defaults.tol_fp),
        p_max=config.extra_int('p_max', defaults.p_max),
        surface_stride=surface_stride or config.grid.m,
    )
    return solve(config.params, config.avg, config.grid, opts)


def _solver_summary(report: SolverReport) -> Dict[str, Any]:
    x_star = 1.0 / report.boundary.rhos
    return {
        "min_x_star": float(np.min(x_star)),
        "x_star_at_expiry": float(x_star[0]),
        "x_star_at_start": float(x_star[-1]),
        "max_fixed_point_iterations": int(report.iterations_per_step.max()),
        "max_fixed_point_residual": report.max_fixed_point_residual,
        "guardrail_violations": report.guardrails.get("total_violations", 0),
    }


class BoundaryWorkflow(BaseWorkflow):
    """Early exercise boundary of the call by front-fixing"""

    def __init__(self):
        super().__init__(
            name="BoundaryWorkflow",
            description="Solves the front-fixing system and writes t, tau, rho, x_star",
        )

    def run(self, config: RunConfig) -> Dict[str, Any]:
        """
        Run the boundary computation

        Args:
            config: Run parameters

        Returns:
            Dictionary with workflow results
        """
        results = self._start(config)
        stage = "solve"
        try:
            report = solve_front_fixing(config)
            frame = report.boundary.to_frame()[['t', 'tau', 'rho', 'x_star']]
            results["summary"] = _solver_summary(report)
            results["frame"] = frame

            stage = "write"
            self._write(results, frame, config.out)
            results["success"] = True
            return results
        except Exception as e:
            return self._fail(results, stage, e)


class SurfaceWorkflow(BaseWorkflow):
    """Synthesized portfolio surface with profile slices"""

    def __init__(self):
        super().__init__(
            name="SurfaceWorkflow",
            description="Solves the front-fixing system and writes Pi(xi, tau) plus profile slices",
        )

    def run(self, config: RunConfig) -> Dict[str, Any]:
        """
        Run the surface computation

        Extras: stride (stored time levels), slices (comma-separated tau values).

        Returns:
            Dictionary with workflow results; the slices go to <out>_slices.csv
        """
        results = self._start(config)
        stage = "solve"
        try:
            stride = config.extra_int('stride', max(1, config.grid.m // 200))
            report = solve_front_fixing(config, surface_stride=stride)
            surface = report.surface

            stage = "slices"
            requested = config.extra_floats('slices', OUTPUT_CONFIG['surface_slices'])
            taus = [tau for tau in requested if 0.0 <= tau <= config.params.T]
            if not taus:
                raise DomainError(f"no slice inside [0, {config.params.T}] among {requested}")
            slices = surface.profile_slices(taus)

            results["summary"] = {
                **_solver_summary(report),
                "stored_levels": len(surface.tau_grid),
                "slices": taus,
            }
            results["frame"] = surface.to_frame()
            results["slices"] = slices

            stage = "write"
            self._write(results, results["frame"], config.out)
            self._write(results, slices, sibling_path(config.out, 'slices'), {**results["header"], 'section': 'slices'})
            results["success"] = True
            return results
        except Exception as e:
            return self._fail(results, stage, e)
