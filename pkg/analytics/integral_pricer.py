"""
Integral representation of the American floating-strike Asian option
Handles the European part, the early exercise premium, original-variable
prices and the smooth-pasting residual of a boundary curve
"""

import logging
from typing import Any, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from analytics.lognormal_engine import arithmetic_alpha_beta, geometric_alpha_beta, normal_cdf, normal_pdf
from analytics.quadrature import sqrt_substitution
from config.config import QUADRATURE_CONFIG
from core.exceptions import BoundaryCoverageError, DomainError, UnsupportedAveragingError
from core.model_core import AveragingMethod, AveragingSpec, ModelParams, OptionKind

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

_COVERAGE_TOL = 1e-9
_PREMIUM_FLOOR = -1e-10


class BoundaryCurve(BaseModel):
    """
    Discretised early exercise boundary

    Stored as rho(tau) on an increasing tau = T - t grid; x*_t = 1/rho(T - t)
    with linear interpolation in tau.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    T: float
    taus: np.ndarray
    rhos: np.ndarray

    @field_validator('taus', 'rhos', mode='before')
    @classmethod
    def _as_array(cls, value: Any) -> np.ndarray:
        array = np.array(value, dtype=float)
        array.setflags(write=False)
        return array

    @model_validator(mode='after')
    def _check_curve(self) -> 'BoundaryCurve':
        if self.taus.ndim != 1 or self.taus.shape != self.rhos.shape or len(self.taus) < 2:
            raise ValueError("boundary needs matching 1-d tau and rho arrays with at least two nodes")
        if np.any(np.diff(self.taus) <= 0):
            raise ValueError("boundary tau grid must be strictly increasing")
        if self.taus[0] < -_COVERAGE_TOL or self.taus[-1] > self.T + _COVERAGE_TOL:
            raise ValueError(f"boundary tau grid must lie in [0, {self.T}]")
        if not np.all(np.isfinite(self.rhos)) or np.any(self.rhos <= 0):
            raise ValueError("boundary values must be positive and finite")
        return self

    @classmethod
    def from_x_star(cls, T: float, t_values: np.ndarray, x_values: np.ndarray) -> 'BoundaryCurve':
        """Build from x*_t samples given on increasing or decreasing t"""
        t_values = np.asarray(t_values, dtype=float)
        x_values = np.asarray(x_values, dtype=float)
        order = np.argsort(T - t_values)
        return cls(T=T, taus=(T - t_values)[order], rhos=1.0 / x_values[order])

    def rho_at(self, tau: ArrayLike) -> ArrayLike:
        return np.interp(tau, self.taus, self.rhos)

    def x_star(self, t: ArrayLike) -> ArrayLike:
        """Boundary position in x = A/S at calendar time t"""
        return 1.0 / self.rho_at(self.T - np.asarray(t, dtype=float))

    def covers(self, t: float) -> bool:
        return self.taus[0] <= _COVERAGE_TOL and self.taus[-1] >= self.T - t - _COVERAGE_TOL

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            't': self.T - self.taus,
            'tau': self.taus,
            'rho': self.rhos,
            'x_star': 1.0 / self.rhos,
        })


class PriceDecomposition(BaseModel):
    """European part, early exercise premium and their sum"""

    model_config = ConfigDict(frozen=True)

    european: float
    premium: float
    total: float

    @model_validator(mode='after')
    def _check_parts(self) -> 'PriceDecomposition':
        if self.premium < _PREMIUM_FLOOR:
            raise ValueError(f"negative early exercise premium {self.premium:.3e}")
        if abs(self.total - self.european - self.premium) > 1e-12 * max(1.0, abs(self.total)):
            raise ValueError("total must equal european + premium")
        return self


def _distribution(
    avg: AveragingSpec, t: float, u: ArrayLike, x: float, params: ModelParams
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    # (alpha, beta, d alpha/dx, d beta/dx) of ln x_u given x_t = x
    if avg.method is AveragingMethod.GEOMETRIC:
        alpha, beta, alpha_x = geometric_alpha_beta(t, u, x, params)
        return alpha, beta, alpha_x, np.zeros_like(beta)
    if avg.method is AveragingMethod.ARITHMETIC:
        return arithmetic_alpha_beta(t, u, x, params)
    raise UnsupportedAveragingError("no integral representation for weighted averaging")


def _check_state(t: float, x: float, params: ModelParams) -> None:
    if not 0 < t <= params.T:
        raise DomainError(f"time must lie in (0, T], got t={t}")
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")


def european_value(t: float, x: float, params: ModelParams, avg: AveragingSpec, kind: OptionKind) -> float:
    """
    European part E_t[exp(-qT) (rho (1 - x_T))^+] of the transformed price

    Args:
        t: Current time, 0 < t <= T
        x: Ratio A_t / S_t
        params: Model parameters
        avg: Arithmetic or geometric averaging
        kind: Call or put

    Returns:
        Transformed European value
    """
    _check_state(t, x, params)
    rho = kind.rho
    alpha, beta, _, _ = _distribution(avg, t, params.T, x, params)
    alpha, beta = float(alpha), float(beta)
    discount = np.exp(-params.q * params.T)
    if beta == 0.0:
        return float(discount * max(rho * (1.0 - x), 0.0))
    ratio = alpha / beta
    value = rho * discount * (
        normal_cdf(-rho * ratio) - np.exp(alpha + 0.5 * beta ** 2) * normal_cdf(-rho * (ratio + beta))
    )
    return float(max(value, 0.0))


def _standardised_boundary(alpha: np.ndarray, beta: np.ndarray, log_boundary: np.ndarray) -> np.ndarray:
    # z = (ln x*_u - alpha) / beta with the beta -> 0 limit taken by sign
    gap = log_boundary - alpha
    with np.errstate(divide='ignore', invalid='ignore'):
        z = gap / beta
    return np.where(beta > 0, z, np.sign(gap) * np.inf)


def _premium_density(
    avg: AveragingSpec,
    params: ModelParams,
    rho: int,
    u: np.ndarray,
    alpha: np.ndarray,
    beta: np.ndarray,
    z: np.ndarray,
) -> np.ndarray:
    # E[1_S f_b(u, x_u)] over the stopping region S = {rho x_u < rho x*_u}
    scale = np.exp(alpha + 0.5 * beta ** 2)
    shifted = z - beta
    prob = normal_cdf(rho * z)
    mean = scale * normal_cdf(rho * shifted)
    if avg.method is AveragingMethod.ARITHMETIC:
        return (params.q + 1.0 / u) * prob - (params.r + 1.0 / u) * mean
    mean_log = scale * ((alpha + beta ** 2) * normal_cdf(rho * shifted) - rho * beta * normal_pdf(shifted))
    return params.q * prob - params.r * mean - mean_log / u


def _require_coverage(boundary: BoundaryCurve, t: float, params: ModelParams) -> None:
    if abs(boundary.T - params.T) > _COVERAGE_TOL:
        raise BoundaryCoverageError(f"boundary maturity {boundary.T} differs from contract maturity {params.T}")
    if not boundary.covers(t):
        raise BoundaryCoverageError(
            f"boundary covers tau in [{boundary.taus[0]}, {boundary.taus[-1]}], needs [0, {params.T - t}]"
        )


def exercise_premium(
    t: float,
    x: float,
    boundary: BoundaryCurve,
    params: ModelParams,
    avg: AveragingSpec,
    kind: OptionKind,
    quad_nodes: int = QUADRATURE_CONFIG['nodes'],
) -> float:
    """
    Early exercise premium collected in the stopping region over (t, T]

    Args:
        t: Current time
        x: Ratio A_t / S_t
        boundary: Exercise boundary covering [t, T]
        params: Model parameters
        avg: Arithmetic or geometric averaging
        kind: Call or put
        quad_nodes: Gauss-Legendre nodes in the sqrt(u - t) variable

    Returns:
        Transformed premium
    """
    _check_state(t, x, params)
    _require_coverage(boundary, t, params)
    if t >= params.T:
        return 0.0
    rho = kind.rho
    u, weights = sqrt_substitution(quad_nodes, t, params.T)
    alpha, beta, _, _ = _distribution(avg, t, u, x, params)
    z = _standardised_boundary(alpha, beta, np.log(boundary.x_star(u)))
    with np.errstate(invalid='ignore', over='ignore'):
        density = _premium_density(avg, params, rho, u, alpha, beta, z)
    return float(rho * np.sum(weights * np.exp(-params.q * u) * density))


def price_decomposition(
    t: float,
    x: float,
    boundary: BoundaryCurve,
    params: ModelParams,
    avg: AveragingSpec,
    kind: OptionKind,
    quad_nodes: int = QUADRATURE_CONFIG['nodes'],
) -> PriceDecomposition:
    """European value, premium and American total at (t, x)"""
    european = european_value(t, x, params, avg, kind)
    premium = exercise_premium(t, x, boundary, params, avg, kind, quad_nodes)
    return PriceDecomposition(european=european, premium=premium, total=european + premium)


def option_value_original(
    t: float,
    S: float,
    A: float,
    params: ModelParams,
    avg: AveragingSpec,
    kind: OptionKind,
    boundary: BoundaryCurve,
    quad_nodes: int = QUADRATURE_CONFIG['nodes'],
) -> float:
    """
    Price V(t, S, A) = S exp(qt) (european + premium) at x = A/S
    """
    if not (S > 0 and A > 0):
        raise DomainError(f"S and A must be positive, got S={S}, A={A}")
    parts = price_decomposition(t, A / S, boundary, params, avg, kind, quad_nodes)
    return float(S * np.exp(params.q * t) * parts.total)


def smooth_pasting_residual(
    t: float,
    boundary: BoundaryCurve,
    params: ModelParams,
    avg: AveragingSpec,
    quad_nodes: int = QUADRATURE_CONFIG['nodes'],
) -> float:
    """
    Residual R = 1 + d/dx european + int_t^T d/dx premium density du at x = x*_t

    Derivatives are taken with the boundary x*_u held fixed; a call boundary
    that satisfies smooth pasting gives R close to zero.

    Args:
        t: Time, 0 < t < T
        boundary: Call boundary covering [t, T]
        params: Model parameters
        avg: Arithmetic or geometric averaging
        quad_nodes: Gauss-Legendre nodes in the sqrt(u - t) variable

    Returns:
        R(t)
    """
    if not 0 < t < params.T:
        raise DomainError(f"smooth pasting residual needs 0 < t < T, got t={t}")
    _require_coverage(boundary, t, params)
    x = float(boundary.x_star(t))

    alpha, beta, alpha_x, beta_x = (float(v) for v in _distribution(avg, t, params.T, x, params))
    ratio = alpha / beta
    european_x = np.exp(-params.q * (params.T - t)) * (
        normal_pdf(ratio) * beta_x
        - np.exp(alpha + 0.5 * beta ** 2) * normal_cdf(-ratio - beta) * (alpha_x + beta * beta_x)
    )

    u, weights = sqrt_substitution(quad_nodes, t, params.T)
    alpha, beta, alpha_x, beta_x = _distribution(avg, t, u, x, params)
    active = beta > 0
    u, weights = u[active], weights[active]
    alpha, beta, alpha_x, beta_x = alpha[active], beta[active], alpha_x[active], beta_x[active]

    boundary_u = boundary.x_star(u)
    z = (np.log(boundary_u) - alpha) / beta
    z_x = -(alpha_x + z * beta_x) / beta
    scale = np.exp(alpha + 0.5 * beta ** 2)
    density = normal_pdf(z)
    tail = normal_cdf(z - beta)

    prob_x = density * z_x
    mean = scale * tail
    mean_x = scale * (alpha_x + beta * beta_x) * tail + boundary_u * density * (z_x - beta_x)
    if avg.method is AveragingMethod.ARITHMETIC:
        integrand_x = (params.q + 1.0 / u) * prob_x - (params.r + 1.0 / u) * mean_x
    else:
        mean_log_x = (
            (alpha_x + 2.0 * beta * beta_x) * mean
            + (alpha + beta ** 2) * mean_x
            - beta_x * boundary_u * density
            + beta * boundary_u * z * density * z_x
        )
        integrand_x = params.q * prob_x - params.r * mean_x - mean_log_x / u

    premium_x = np.sum(weights * np.exp(-params.q * (u - t)) * integrand_x)
    residual = 1.0 + european_x + premium_x
    logger.debug(f"Smooth pasting residual at t={t}: {residual:.3e}")
    return float(residual)
