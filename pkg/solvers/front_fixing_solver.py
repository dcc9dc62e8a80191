"""
Front-fixing solver for the American Asian call
Marches the synthesized portfolio Pi(xi, tau) on the fixed domain xi in [0, L]
with operator splitting and an integral update of the free boundary rho(tau)
"""

import logging
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from analytics.expiry_asymptotics import expiry_limit
from analytics.integral_pricer import BoundaryCurve
from config.config import FRONT_FIXING_CONFIG, GRID_CONFIG
from core.exceptions import FixedPointConvergenceError, NonFiniteError
from core.model_core import (
    AveragingMethod,
    AveragingSpec,
    GridSpec,
    ModelParams,
    OptionKind,
    averaging_drift,
    reaction_coefficient,
)
from guardrails.numerical_guardrails import BoundaryEnvelopeGuardrail, PortfolioRangeGuardrail
from solvers.base_solver import BaseSolver
from solvers.tridiagonal import is_diagonally_dominant, solve_tridiagonal

logger = logging.getLogger(__name__)


class FrontFixingOptions(BaseModel):
    """Iteration and storage options of the front-fixing scheme"""

    model_config = ConfigDict(frozen=True)

    tol_fp: float = Field(FRONT_FIXING_CONFIG['tol_fp'], gt=0)
    p_max: int = Field(FRONT_FIXING_CONFIG['p_max'], ge=1)
    monitor_eps: float = Field(FRONT_FIXING_CONFIG['monitor_eps'], ge=0)
    surface_stride: int = Field(FRONT_FIXING_CONFIG['surface_stride'], ge=1)


class PortfolioSurface(BaseModel):
    """Pi on the (xi, tau) grid; rows follow tau_grid"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    xi_grid: np.ndarray
    tau_grid: np.ndarray
    values: np.ndarray

    def row_at(self, tau: float) -> Tuple[float, np.ndarray]:
        """Stored row nearest to tau"""
        j = int(np.argmin(np.abs(self.tau_grid - tau)))
        return float(self.tau_grid[j]), self.values[j]

    def profile_slices(self, taus: Sequence[float]) -> pd.DataFrame:
        """Pi(., tau) at the stored levels nearest to the requested taus"""
        frames = []
        for requested in taus:
            tau, row = self.row_at(requested)
            frames.append(pd.DataFrame({'tau_requested': requested, 'tau': tau, 'xi': self.xi_grid, 'pi': row}))
        return pd.concat(frames, ignore_index=True)

    def to_frame(self) -> pd.DataFrame:
        tau, xi = np.meshgrid(self.tau_grid, self.xi_grid, indexing='ij')
        return pd.DataFrame({'tau': tau.ravel(), 'xi': xi.ravel(), 'pi': self.values.ravel()})


class SolverReport(BaseModel):
    """Outcome of a front-fixing solve"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: ModelParams
    avg: AveragingSpec
    grid: GridSpec
    boundary: BoundaryCurve
    surface: PortfolioSurface
    iterations_per_step: np.ndarray
    max_fixed_point_residual: float
    guardrails: Dict[str, Any] = Field(default_factory=dict)


def initial_rho(params: ModelParams, avg: AveragingSpec) -> float:
    """rho(0) = 1 / x*_T; equals max((1 + rT)/(1 + qT), 1) for arithmetic averaging"""
    return 1.0 / expiry_limit(params, avg, OptionKind.CALL).x_star_T


def initial_row(xi_grid: np.ndarray, rho0: float) -> np.ndarray:
    """Step function -1 below ln rho(0), 0 above"""
    return np.where(xi_grid < np.log(rho0), -1.0, 0.0)


def coefficient_time(tau_j: float, T: float, k: float) -> float:
    """Time argument of the 1/(T - tau) terms, clipped to T - k/2"""
    return min(tau_j, T - 0.5 * k)


def transport_step(
    prev_row: np.ndarray,
    rho_prev: float,
    rho_new: float,
    params: ModelParams,
    k: float,
    xi_grid: np.ndarray,
) -> np.ndarray:
    """
    Half step along the characteristics of the boundary-driven transport

    Pi^{j-1/2}_i = Pi^{j-1}(eta_i), eta_i = xi_i - ln rho^j + ln rho^{j-1} - (r - q) k,
    linear interpolation inside the grid, -1 for eta <= 0 and 0 beyond L.
    """
    shift = np.log(rho_new) - np.log(rho_prev) + (params.r - params.q) * k
    eta = xi_grid - shift
    half = np.interp(eta, xi_grid, prev_row, right=0.0)
    half[eta <= 0.0] = -1.0
    half[-1] = 0.0
    return half


def diffusion_coefficients(
    rho_new: float,
    params: ModelParams,
    avg: AveragingSpec,
    grid: GridSpec,
    tau_j: float,
    xi_grid: Optional[np.ndarray] = None,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Implicit diffusion-reaction coefficients (alpha, beta, gamma) at every xi node

    beta = 1 + b k - (alpha + gamma) holds by construction.
    """
    xi = grid.xi_grid() if xi_grid is None else xi_grid
    k, h = grid.time_step(params.T), grid.h
    tau_c = coefficient_time(tau_j, params.T, k)
    var = params.sigma ** 2
    drift = averaging_drift(avg, np.exp(xi) / rho_new, params.T - tau_c)
    reaction = reaction_coefficient(avg, params, xi, tau_c, rho_new)
    diffusive = -k * var / (2.0 * h ** 2)
    convective = k / (2.0 * h) * (0.5 * var + drift)
    alpha = diffusive + convective
    gamma = diffusive - convective
    beta = 1.0 + reaction * k - (alpha + gamma)
    return alpha, beta, gamma


def diffusion_step(
    half_row: np.ndarray,
    rho_new: float,
    params: ModelParams,
    avg: AveragingSpec,
    grid: GridSpec,
    tau_j: float,
    xi_grid: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Implicit diffusion step with Dirichlet data Pi_0 = -1, Pi_n = 0

    Args:
        half_row: Output of the transport step
        rho_new: Boundary value at this level
        params: Model parameters
        avg: Averaging operator
        grid: Grid specification
        tau_j: Time level

    Returns:
        The new row Pi^j
    """
    alpha, beta, gamma = diffusion_coefficients(rho_new, params, avg, grid, tau_j, xi_grid)
    rhs = np.array(half_row[1:-1], dtype=float)
    rhs[0] += alpha[1]
    # Pi_n = 0 contributes nothing to the last interior row
    interior = solve_tridiagonal(
        alpha[1:-1],
        beta[1:-1],
        gamma[1:-1],
        rhs,
        grid={'n': grid.n, 'm': grid.m, 'L': grid.L, 'tau': tau_j},
    )
    row = np.empty_like(half_row, dtype=float)
    row[0] = -1.0
    row[1:-1] = interior
    row[-1] = 0.0
    return row


def boundary_update(
    rho_prev: float,
    prev_row: np.ndarray,
    new_row: np.ndarray,
    params: ModelParams,
    avg: AveragingSpec,
    grid: GridSpec,
    tau_j: float,
    xi_grid: Optional[np.ndarray] = None,
) -> float:
    """
    Integral update of the free boundary

    ln rho^j = ln rho^{j-1} + I0(Pi^{j-1}) - I0(Pi^j)
               + k (q + sigma^2/2 - q rho^{j-1} - I1(rho^{j-1}, Pi^j)),
    trapezoid rule on [0, L] with I1 weight r - f(exp(xi)/rho^{j-1}, T - tau).
    """
    xi = grid.xi_grid() if xi_grid is None else xi_grid
    k = grid.time_step(params.T)
    tau_c = coefficient_time(tau_j, params.T, k)
    weight = params.r - averaging_drift(avg, np.exp(xi) / rho_prev, params.T - tau_c)
    increment = (
        np.trapezoid(prev_row, xi)
        - np.trapezoid(new_row, xi)
        + k * (params.q + 0.5 * params.sigma ** 2 - params.q * rho_prev - np.trapezoid(weight * new_row, xi))
    )
    log_rho = np.log(rho_prev) + increment
    if not np.isfinite(log_rho):
        raise NonFiniteError(f"boundary update diverged at tau={tau_j}", {'tau': tau_j})
    return float(np.exp(log_rho))


class FrontFixingSolver(BaseSolver):
    """Time march of the front-fixing system for an arithmetically averaged call"""

    def __init__(
        self,
        params: ModelParams,
        avg: AveragingSpec,
        grid: GridSpec,
        options: Optional[FrontFixingOptions] = None,
    ):
        """Initialize the solver with model, averaging, grid and iteration options"""
        self.options = options or FrontFixingOptions()
        super().__init__(
            name="FrontFixingSolver",
            description="Operator-split front-fixing scheme with integral boundary update",
            config=self.options.model_dump(),
        )
        self.params = params
        self.avg = avg
        self.grid = grid
        self.guardrails.guardrails = [
            PortfolioRangeGuardrail(eps=self.options.monitor_eps),
            BoundaryEnvelopeGuardrail(low=0.0, high=np.inf),
        ]
        if avg.method is not AveragingMethod.ARITHMETIC:
            logger.warning(f"Front-fixing with {avg.method.value} averaging is experimental")

    def _level(self, rho: float, tau_j: float, rho_prev: float, prev_row: np.ndarray, xi: np.ndarray):
        """Portfolio row at trial boundary rho and the level-equation residual F(Pi(rho)) - rho"""
        k = self.grid.time_step(self.params.T)
        half = transport_step(prev_row, rho_prev, rho, self.params, k, xi)
        row = diffusion_step(half, rho, self.params, self.avg, self.grid, tau_j, xi)
        updated = boundary_update(rho_prev, prev_row, row, self.params, self.avg, self.grid, tau_j, xi)
        return updated - rho, row

    def _advance(self, j: int, tau_j: float, rho_prev: float, prev_row: np.ndarray, xi: np.ndarray):
        """
        Solve the scalar level equation rho = F(Pi(rho)) by secant steps

        The plain fixed-point map has slope close to one, so the secant is
        started from rho^{j-1} and its Picard image. A bracketed Brent solve
        takes over when the secant leaves the positive axis or runs out of
        iterations.
        """
        tol = self.options.tol_fp
        rho_0 = rho_prev
        g_0, row = self._level(rho_0, tau_j, rho_prev, prev_row, xi)
        if abs(g_0) < tol:
            return rho_0, row, 1, abs(g_0)
        rho_1 = rho_0 + g_0
        g_1, row = self._level(rho_1, tau_j, rho_prev, prev_row, xi)
        evaluations = 2
        while evaluations < self.options.p_max:
            if abs(g_1) < tol:
                return rho_1, row, evaluations, abs(g_1)
            if g_1 == g_0:
                break
            rho_2 = rho_1 - g_1 * (rho_1 - rho_0) / (g_1 - g_0)
            if not np.isfinite(rho_2) or rho_2 <= 0.0:
                break
            rho_0, g_0 = rho_1, g_1
            rho_1 = rho_2
            g_1, row = self._level(rho_1, tau_j, rho_prev, prev_row, xi)
            evaluations += 1
        if abs(g_1) < tol:
            return rho_1, row, evaluations, abs(g_1)
        logger.debug(f"Secant left the admissible range at level {j}, bracketing instead")
        return self._bracketed(j, tau_j, rho_prev, prev_row, xi, evaluations)

    def _bracketed(self, j: int, tau_j: float, rho_prev: float, prev_row: np.ndarray, xi: np.ndarray, used: int):
        def residual(rho: float) -> float:
            return self._level(rho, tau_j, rho_prev, prev_row, xi)[0]

        width = 1e-3
        g_mid = residual(rho_prev)
        while width <= 0.5:
            low, high = rho_prev * (1.0 - width), rho_prev * (1.0 + width)
            g_low, g_high = residual(low), residual(high)
            if np.sign(g_low) != np.sign(g_mid):
                high = rho_prev
                break
            if np.sign(g_high) != np.sign(g_mid):
                low = rho_prev
                break
            width *= 2.0
        else:
            logger.error(f"No sign change of the level equation at level {j} (tau={tau_j})")
            raise FixedPointConvergenceError(j, abs(g_mid), self.options.p_max)

        rho, info = brentq(residual, low, high, xtol=1e-14, rtol=4 * np.finfo(float).eps,
                           maxiter=self.options.p_max, full_output=True, disp=False)
        g, row = self._level(rho, tau_j, rho_prev, prev_row, xi)
        if not info.converged or abs(g) >= self.options.tol_fp:
            logger.error(f"Level equation unsolved at level {j} (tau={tau_j}), residual {abs(g):.3e}")
            raise FixedPointConvergenceError(j, abs(g), self.options.p_max)
        return rho, row, used + info.function_calls, abs(g)

    def solve(self) -> SolverReport:
        """
        Run the full time march

        Returns:
            SolverReport with boundary, stored surface and iteration counts
        """
        params, grid = self.params, self.grid
        xi = grid.xi_grid()
        taus = grid.tau_grid(params.T)
        k = grid.time_step(params.T)

        rho = initial_rho(params, self.avg)
        row = initial_row(xi, rho)
        logger.info(
            f"Front-fixing solve: r={params.r}, q={params.q}, sigma={params.sigma}, T={params.T}, "
            f"n={grid.n}, m={grid.m}, L={grid.L}, rho(0)={rho:.10g}"
        )

        alpha, beta, gamma = diffusion_coefficients(rho, params, self.avg, grid, k, xi)
        dominant, bad_row = is_diagonally_dominant(alpha[1:-1], beta[1:-1], gamma[1:-1])
        if not dominant:
            logger.warning(f"Diffusion matrix not diagonally dominant at row {bad_row + 1} (h={grid.h}, k={k})")

        rhos = np.empty(grid.m + 1)
        rhos[0] = rho
        iterations = np.zeros(grid.m, dtype=int)
        stride = self.options.surface_stride
        stored_levels = [0]
        stored_rows = [row.copy()]
        max_residual = 0.0

        for j in range(1, grid.m + 1):
            rho, row, count, residual = self._advance(j, taus[j], rho, row, xi)
            self._require_finite(row, "portfolio row", j)
            rhos[j] = rho
            iterations[j - 1] = count
            max_residual = max(max_residual, residual)
            self.guardrails.process({'row': row, 'boundary': rho, 'level': j})
            if j % stride == 0 or j == grid.m:
                stored_levels.append(j)
                stored_rows.append(row.copy())
            logger.debug(f"level {j}: rho={rho:.12g}, iterations={count}")

        surface = PortfolioSurface(xi_grid=xi, tau_grid=taus[stored_levels], values=np.vstack(stored_rows))
        boundary = BoundaryCurve(T=params.T, taus=taus, rhos=rhos)
        summary = self.guardrail_summary()
        logger.info(
            f"Front-fixing done: min x* = {np.min(1.0 / rhos):.6f}, max iterations {iterations.max()}, "
            f"guardrail violations {summary['total_violations']}"
        )
        return SolverReport(
            params=params,
            avg=self.avg,
            grid=grid,
            boundary=boundary,
            surface=surface,
            iterations_per_step=iterations,
            max_fixed_point_residual=max_residual,
            guardrails=summary,
        )


def solve(
    params: ModelParams,
    avg: AveragingSpec,
    grid: Optional[GridSpec] = None,
    opts: Optional[FrontFixingOptions] = None,
) -> SolverReport:
    """Solve the front-fixing system with default grid from the configuration"""
    grid = grid or GridSpec(**GRID_CONFIG)
    return FrontFixingSolver(params, avg, grid, opts).solve()


def extract_boundary(report: SolverReport) -> BoundaryCurve:
    """
    Accessor for the boundary of a finished solve

    The solver already stores the curve on its tau grid with x*_t = 1/rho(T - t);
    this returns that object unchanged so callers do not depend on report fields.
    """
    return report.boundary


def _slope_at_origin(surface: PortfolioSurface) -> np.ndarray:
    # second-order one-sided d Pi / d xi at xi = 0
    h = surface.xi_grid[1] - surface.xi_grid[0]
    v = surface.values
    return (-3.0 * v[:, 0] + 4.0 * v[:, 1] - v[:, 2]) / (2.0 * h)


def pointwise_boundary_residual(report: SolverReport) -> pd.DataFrame:
    """
    Residual of q rho - r + f(1/rho, T - tau) - sigma^2/2 d Pi/d xi (0, tau) on stored levels
    """
    params, surface = report.params, report.surface
    k = report.grid.time_step(params.T)
    rows = []
    slopes = _slope_at_origin(surface)
    for tau, slope in zip(surface.tau_grid[1:], slopes[1:]):
        rho = float(report.boundary.rho_at(tau))
        drift = averaging_drift(report.avg, 1.0 / rho, params.T - coefficient_time(tau, params.T, k))
        residual = params.q * rho - params.r + drift - 0.5 * params.sigma ** 2 * slope
        rows.append({'tau': float(tau), 'residual': float(residual)})
    return pd.DataFrame(rows, columns=['tau', 'residual'])


def explicit_rho(report: SolverReport) -> pd.DataFrame:
    """Arithmetic boundary from the explicit formula in d Pi/d xi (0, tau), on stored levels"""
    params, surface = report.params, report.surface
    remaining = params.T - surface.tau_grid
    slopes = _slope_at_origin(surface)
    rho = (1.0 + params.r * remaining + 0.5 * params.sigma ** 2 * remaining * slopes) / (1.0 + params.q * remaining)
    return pd.DataFrame({'tau': surface.tau_grid, 'rho_explicit': rho, 'rho': report.boundary.rho_at(surface.tau_grid)})
