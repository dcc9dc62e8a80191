"""
PSOR solver for the reduced American Asian call
Solves the variational inequality for W(x, tau) = V / A on a log-uniform x grid
with implicit time stepping and projected successive over-relaxation
"""

import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np
from numba import njit
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.interpolate import RegularGridInterpolator

from analytics.expiry_asymptotics import expiry_limit
from analytics.integral_pricer import BoundaryCurve
from config.config import PSOR_CONFIG
from core.exceptions import DomainError, PsorConvergenceError
from core.model_core import AveragingSpec, ModelParams, OptionKind, averaging_drift
from guardrails.numerical_guardrails import ComplementarityGuardrail, ObstacleGuardrail
from solvers.base_solver import BaseSolver

logger = logging.getLogger(__name__)


class PsorOptions(BaseModel):
    """Grid and iteration settings of the PSOR solver"""

    model_config = ConfigDict(frozen=True)

    x_min: float = Field(PSOR_CONFIG['x_min'], gt=0)
    x_max: float = Field(PSOR_CONFIG['x_max'], gt=0)
    n: int = Field(PSOR_CONFIG['n'], ge=8)
    m: int = Field(PSOR_CONFIG['m'], ge=8)
    omega: float = Field(PSOR_CONFIG['omega'], gt=1, lt=2)
    tol: float = Field(PSOR_CONFIG['tol'], gt=0)
    max_iter: int = Field(PSOR_CONFIG['max_iter'], ge=1)
    contact_tol: float = Field(PSOR_CONFIG['contact_tol'], ge=0)
    peclet_limit: float = Field(PSOR_CONFIG['peclet_limit'], gt=0)
    complementarity_tol: float = Field(1e-6, gt=0)
    surface_stride: int = Field(1, ge=1)

    @model_validator(mode='after')
    def _check_domain(self) -> 'PsorOptions':
        if not self.x_min < 1.0 < self.x_max:
            raise ValueError(f"x grid must straddle 1, got ({self.x_min}, {self.x_max})")
        return self


class ValueSurface(BaseModel):
    """W on the (x, tau) grid; rows follow tau_grid"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x_grid: np.ndarray
    tau_grid: np.ndarray
    values: np.ndarray

    @property
    def obstacle(self) -> np.ndarray:
        return obstacle(self.x_grid)


class PsorResult(BaseModel):
    """Outcome of a PSOR solve"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: ModelParams
    options: PsorOptions
    surface: ValueSurface
    boundary: BoundaryCurve
    sweeps_per_step: np.ndarray
    guardrails: Dict[str, Any] = Field(default_factory=dict)


def obstacle(x: np.ndarray) -> np.ndarray:
    """Exercise payoff max(1/x - 1, 0) in reduced variables"""
    return np.maximum(1.0 / np.asarray(x, dtype=float) - 1.0, 0.0)


@njit(cache=True)
def _projected_sor(lower, diag, upper, rhs, psi, w, omega, tol, max_iter):
    # stops once the largest change is below tol relative to max(1, max |w|)
    n = diag.shape[0]
    update = np.inf
    scale = 1.0
    for sweep in range(1, max_iter + 1):
        update = 0.0
        scale = 1.0
        for i in range(n):
            acc = rhs[i]
            if i > 0:
                acc -= lower[i] * w[i - 1]
            if i < n - 1:
                acc -= upper[i] * w[i + 1]
            relaxed = w[i] + omega * (acc / diag[i] - w[i])
            if relaxed < psi[i]:
                relaxed = psi[i]
            change = abs(relaxed - w[i])
            if change > update:
                update = change
            if abs(relaxed) > scale:
                scale = abs(relaxed)
            w[i] = relaxed
        if update < tol * scale:
            return w, sweep, update / scale
    return w, max_iter, update / scale


def implicit_operator(
    x: np.ndarray,
    params: ModelParams,
    avg: AveragingSpec,
    k: float,
    time_to_maturity: float,
    peclet_limit: float,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Bands of I - k L at interior nodes, L the reduced operator in y = ln x

    L W = sigma^2/2 W_yy + mu W_y + (f - r) W, mu = sigma^2/2 - (r - q) + f;
    central differences, one-sided upwind where the cell Peclet number exceeds the limit.
    """
    y_step = np.log(x[1]) - np.log(x[0])
    half_var = 0.5 * params.sigma ** 2
    xi = x[1:-1]
    drift = averaging_drift(avg, xi, time_to_maturity)
    mu = half_var - (params.r - params.q) + drift
    reaction = drift - params.r

    diffusion = half_var / y_step ** 2
    lower = np.full_like(xi, diffusion)
    upper = np.full_like(xi, diffusion)
    centre = np.full_like(xi, -2.0 * diffusion) + reaction

    upwind = np.abs(mu) * y_step / half_var > peclet_limit
    forward = upwind & (mu > 0)
    backward = upwind & (mu < 0)
    central = ~upwind
    lower[central] -= mu[central] / (2.0 * y_step)
    upper[central] += mu[central] / (2.0 * y_step)
    upper[forward] += mu[forward] / y_step
    centre[forward] -= mu[forward] / y_step
    lower[backward] -= mu[backward] / y_step
    centre[backward] += mu[backward] / y_step

    return -k * lower, 1.0 - k * centre, -k * upper


def _contact_boundary(x: np.ndarray, w: np.ndarray, psi: np.ndarray, contact_tol: float) -> float:
    # top of the contiguous contact interval starting at x_min
    contact = (w - psi <= contact_tol) & (psi > 0)
    if not contact[0]:
        return float(x[0])
    gaps = np.nonzero(~contact)[0]
    top = (gaps[0] - 1) if len(gaps) else len(x) - 1
    return float(x[top])


class PsorSolver(BaseSolver):
    """Implicit finite differences with PSOR on the reduced inequality"""

    def __init__(self, params: ModelParams, avg: Optional[AveragingSpec] = None, options: Optional[PsorOptions] = None):
        """Initialize the solver with model parameters and grid options"""
        self.options = options or PsorOptions()
        super().__init__(
            name="PsorSolver",
            description="Projected SOR on the reduced variational inequality",
            config=self.options.model_dump(),
        )
        self.params = params
        self.avg = avg or AveragingSpec.arithmetic()
        self.guardrails.guardrails = [
            ObstacleGuardrail(tol=0.0),
            ComplementarityGuardrail(tol=self.options.complementarity_tol),
        ]

    def x_grid(self) -> np.ndarray:
        opts = self.options
        return np.exp(np.linspace(np.log(opts.x_min), np.log(opts.x_max), opts.n + 1))

    def solve(self) -> PsorResult:
        """
        Run the time march

        Returns:
            PsorResult with value surface, boundary and sweep counts
        """
        params, opts = self.params, self.options
        x = self.x_grid()
        psi = obstacle(x)
        taus = np.linspace(0.0, params.T, opts.m + 1)
        k = params.T / opts.m
        logger.info(
            f"PSOR solve: r={params.r}, q={params.q}, sigma={params.sigma}, T={params.T}, "
            f"x in ({opts.x_min}, {opts.x_max}), n={opts.n}, m={opts.m}, omega={opts.omega}"
        )

        w = psi.copy()
        x_star = np.empty(opts.m + 1)
        x_star[0] = expiry_limit(params, self.avg, OptionKind.CALL).x_star_T
        sweeps = np.zeros(opts.m, dtype=int)
        stored_levels = [0]
        stored_rows = [w.copy()]
        psi_inner = np.ascontiguousarray(psi[1:-1])

        for j in range(1, opts.m + 1):
            time_to_maturity = params.T - min(taus[j], params.T - 0.5 * k)
            lower, diag, upper = implicit_operator(x, params, self.avg, k, time_to_maturity, opts.peclet_limit)
            rhs = w[1:-1].copy()
            rhs[0] -= lower[0] * psi[0]
            guess = np.maximum(w[1:-1], psi_inner)
            inner, count, update = _projected_sor(
                lower, diag, upper, rhs, psi_inner, guess, opts.omega, opts.tol, opts.max_iter
            )
            residual = diag * inner - rhs
            residual[1:] += lower[1:] * inner[:-1]
            residual[:-1] += upper[:-1] * inner[1:]
            if update >= opts.tol:
                # sweeps stagnated; accept only a row that already solves the complementarity problem
                gap = float(np.max(np.abs(np.minimum(inner - psi_inner, residual))))
                if gap > opts.complementarity_tol:
                    logger.error(f"PSOR stalled at level {j}: relative update {update:.3e}, complementarity {gap:.3e}")
                    raise PsorConvergenceError(j, float(update), int(count))
                logger.warning(
                    f"PSOR stagnated at level {j} after {count} sweeps: relative update {update:.3e}, "
                    f"complementarity {gap:.3e}"
                )

            w = np.concatenate(([psi[0]], inner, [0.0]))
            self._require_finite(w, "value row", j)
            sweeps[j - 1] = count
            self.guardrails.process({
                'values': inner, 'obstacle': psi_inner, 'residual': residual, 'level': j,
            })
            x_star[j] = _contact_boundary(x, w, psi, opts.contact_tol)
            if j % opts.surface_stride == 0 or j == opts.m:
                stored_levels.append(j)
                stored_rows.append(w.copy())

        surface = ValueSurface(x_grid=x, tau_grid=taus[stored_levels], values=np.vstack(stored_rows))
        boundary = BoundaryCurve(T=params.T, taus=taus, rhos=1.0 / x_star)
        summary = self.guardrail_summary()
        logger.info(
            f"PSOR done: min x* = {np.min(x_star):.6f}, mean sweeps {sweeps.mean():.1f}, "
            f"guardrail violations {summary['total_violations']}"
        )
        return PsorResult(
            params=params,
            options=opts,
            surface=surface,
            boundary=boundary,
            sweeps_per_step=sweeps,
            guardrails=summary,
        )


def solve_psor(
    params: ModelParams,
    options: Optional[PsorOptions] = None,
    avg: Optional[AveragingSpec] = None,
) -> PsorResult:
    """Solve the reduced inequality with PSOR"""
    return PsorSolver(params, avg, options).solve()


def value_at(surface: ValueSurface, x: float, tau: float) -> float:
    """
    Bilinear interpolation of W in (tau, ln x)

    Args:
        surface: Stored value surface
        x: Ratio A/S inside the x grid
        tau: Time to expiry inside the stored tau grid

    Returns:
        Interpolated W(x, tau)
    """
    if not (surface.x_grid[0] <= x <= surface.x_grid[-1] and surface.tau_grid[0] <= tau <= surface.tau_grid[-1]):
        raise DomainError(
            f"(x={x}, tau={tau}) outside the grid hull "
            f"[{surface.x_grid[0]}, {surface.x_grid[-1]}] x [{surface.tau_grid[0]}, {surface.tau_grid[-1]}]"
        )
    interpolator = RegularGridInterpolator((surface.tau_grid, np.log(surface.x_grid)), surface.values)
    return float(interpolator([[tau, np.log(x)]])[0])


def option_value(surface: ValueSurface, t: float, S: float, A: float, T: float) -> float:
    """V(t, S, A) = A W(A/S, T - t)"""
    if not (S > 0 and A > 0):
        raise DomainError(f"S and A must be positive, got S={S}, A={A}")
    return float(A * value_at(surface, A / S, T - t))
