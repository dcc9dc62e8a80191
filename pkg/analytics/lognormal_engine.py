"""
Log-normal toolkit for conditioned averages
Truncated log-normal expectations, exact geometric-average parameters and
moment-matched arithmetic-average parameters
"""

import logging
from enum import Enum
from typing import Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import ndtr

from analytics.quadrature import gauss_legendre
from config.config import LOGNORMAL_CONFIG, QUADRATURE_CONFIG
from core.exceptions import DegenerateDistributionError, DomainError, MomentConsistencyError, UnsupportedAveragingError
from core.model_core import ModelParams

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

_INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)


class SecondMomentForm(str, Enum):
    """Cross term used in the second conditioned moment of the arithmetic average"""

    EXACT = 'exact'
    FACTORIZED = 'factorized'


class LogNormalParams(BaseModel):
    """Mean and standard deviation of ln x_u given F_t"""

    model_config = ConfigDict(frozen=True)

    alpha: float
    beta: float = Field(..., ge=0)


class MomentPair(BaseModel):
    """First two conditioned moments of x_u"""

    model_config = ConfigDict(frozen=True)

    m1: float = Field(..., gt=0)
    m2: float = Field(..., gt=0)


class TruncatedExpectations(BaseModel):
    """Expectations of a log-normal variable restricted to {rho Omega >= rho K}"""

    model_config = ConfigDict(frozen=True)

    prob: float
    mean_truncated: float
    mean_log_truncated: float
    payoff_expectation: float


def normal_cdf(z: ArrayLike) -> ArrayLike:
    """Standard normal distribution function"""
    return ndtr(z)


def normal_pdf(z: ArrayLike) -> ArrayLike:
    """Standard normal density"""
    z = np.asarray(z, dtype=float)
    return _INV_SQRT_2PI * np.exp(-0.5 * z * z)


def truncated_expectations(alpha: float, beta: float, K: float, rho: int) -> TruncatedExpectations:
    """
    Truncated expectations of Omega = exp(omega), omega ~ N(alpha, beta^2)

    Args:
        alpha: Mean of ln Omega
        beta: Standard deviation of ln Omega, positive
        K: Truncation level, positive
        rho: +1 restricts to Omega >= K, -1 to Omega <= K

    Returns:
        TruncatedExpectations with P, E[1 Omega], E[1 Omega ln Omega] and E[(rho(Omega - K))^+]
    """
    if not beta > 0:
        raise DegenerateDistributionError(f"truncated expectations need beta > 0, got {beta}")
    if not K > 0:
        raise DomainError(f"truncation level must be positive, got {K}")
    if rho not in (1, -1):
        raise DomainError(f"rho must be +1 or -1, got {rho}")

    gamma = (alpha + beta ** 2 - np.log(K)) / beta
    scale = np.exp(alpha + 0.5 * beta ** 2)
    prob = normal_cdf(rho * (gamma - beta))
    mean = scale * normal_cdf(rho * gamma)
    mean_log = scale * ((alpha + beta ** 2) * normal_cdf(rho * gamma) + rho * beta * normal_pdf(gamma))
    return TruncatedExpectations(
        prob=float(prob),
        mean_truncated=float(mean),
        mean_log_truncated=float(mean_log),
        payoff_expectation=float(rho * (mean - K * prob)),
    )


def _check_times(t: float, u: ArrayLike) -> np.ndarray:
    u_arr = np.asarray(u, dtype=float)
    if not t > 0:
        raise DomainError(f"conditioning time must be positive, got t={t}")
    if np.any(u_arr < t):
        raise DomainError(f"horizon must not precede the conditioning time t={t}")
    return u_arr


def geometric_alpha_beta(
    t: float, u: ArrayLike, x: float, params: ModelParams
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorised geometric-average parameters

    Returns:
        (alpha, beta, d alpha / d x); beta does not depend on x
    """
    u_arr = _check_times(t, u)
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    drift = params.r - params.q + 0.5 * params.sigma ** 2
    alpha = (t / u_arr) * np.log(x) - (u_arr ** 2 - t ** 2) / (2.0 * u_arr) * drift
    beta = params.sigma / (u_arr * np.sqrt(3.0)) * np.sqrt(np.maximum(u_arr ** 3 - t ** 3, 0.0))
    return alpha, beta, t / (u_arr * x)


def geometric_params(t: float, u: float, x: float, params: ModelParams) -> LogNormalParams:
    """Exact distribution of ln x_u for the geometric average given x_t = x"""
    alpha, beta, _ = geometric_alpha_beta(t, u, x, params)
    return LogNormalParams(alpha=float(alpha), beta=float(beta))


def _decay_integral(a: float, tau: np.ndarray) -> np.ndarray:
    # (1 - exp(-a tau)) / a
    if abs(a) < LOGNORMAL_CONFIG['series_threshold']:
        return tau - 0.5 * a * tau ** 2 + a ** 2 * tau ** 3 / 6.0
    return -np.expm1(-a * tau) / a


def _weighted_power_integral(k: int, a: float, tau: np.ndarray) -> np.ndarray:
    # int_0^tau b^k exp(-a b) db
    s, w = gauss_legendre(QUADRATURE_CONFIG['moment_series_nodes'], 0.0, 1.0)
    tau_col = np.asarray(tau, dtype=float)[..., None]
    inner = np.sum(w * s ** k * np.exp(-a * tau_col * s), axis=-1)
    return tau ** (k + 1) * inner


def _double_decay_integral(delta: float, c: float, tau: np.ndarray) -> np.ndarray:
    # int_0^tau exp(-delta b) (1 - exp(-c b)) / c db
    if abs(c) < LOGNORMAL_CONFIG['series_threshold']:
        return (
            _weighted_power_integral(1, delta, tau)
            - 0.5 * c * _weighted_power_integral(2, delta, tau)
            + c ** 2 * _weighted_power_integral(3, delta, tau) / 6.0
        )
    return (_decay_integral(delta, tau) - _decay_integral(delta + c, tau)) / c


def arithmetic_moment_arrays(
    t: float,
    u: ArrayLike,
    x: float,
    params: ModelParams,
    form: SecondMomentForm = SecondMomentForm.EXACT,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorised first and second conditioned moments of the arithmetic x_u

    Returns:
        (m1, m2, d m1 / d x, d m2 / d x)
    """
    u_arr = _check_times(t, u)
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    tau = u_arr - t
    delta = params.r - params.q
    var = params.sigma ** 2
    decay = np.exp(-delta * tau)

    m1_x = (t / u_arr) * decay
    m1 = x * m1_x + _decay_integral(delta, tau) / u_arr

    cross_rate = delta - var if form is SecondMomentForm.EXACT else delta
    square_x = (t / u_arr) ** 2 * np.exp(-(2.0 * delta - var) * tau)
    cross_x = 2.0 * t / u_arr ** 2 * decay * _decay_integral(cross_rate, tau)
    tail = 2.0 / u_arr ** 2 * _double_decay_integral(delta, delta - var, tau)

    m2 = x ** 2 * square_x + x * cross_x + tail
    m2_x = 2.0 * x * square_x + cross_x
    return m1, m2, m1_x, m2_x


def arithmetic_moments(
    t: float,
    u: float,
    x: float,
    params: ModelParams,
    form: SecondMomentForm = SecondMomentForm.EXACT,
) -> MomentPair:
    """
    First two conditioned moments E_t[x_u], E_t[x_u^2] of the arithmetic average ratio

    Args:
        t: Conditioning time, positive
        u: Horizon, u >= t
        x: Current ratio A_t / S_t
        params: Model parameters
        form: Cross-term variant of the second moment

    Returns:
        MomentPair
    """
    m1, m2, _, _ = arithmetic_moment_arrays(t, u, x, params, form)
    return MomentPair(m1=float(m1), m2=float(m2))


def _matched_beta_squared(m1: np.ndarray, m2: np.ndarray) -> np.ndarray:
    beta_sq = np.log(m2) - 2.0 * np.log(m1)
    tol = LOGNORMAL_CONFIG['beta_clamp_tol']
    if np.any(beta_sq < -tol):
        worst = float(np.min(beta_sq))
        logger.error(f"Second moment below squared first moment: ln m2 - 2 ln m1 = {worst:.3e}")
        raise MomentConsistencyError(f"negative log-variance {worst:.3e} from moment matching")
    return np.maximum(beta_sq, 0.0)


def arithmetic_alpha_beta(
    t: float, u: ArrayLike, x: float, params: ModelParams
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorised moment-matched parameters and their x-derivatives

    Returns:
        (alpha, beta, d alpha / d x, d beta / d x); the beta derivative is nan where beta = 0
    """
    m1, m2, m1_x, m2_x = arithmetic_moment_arrays(t, u, x, params)
    beta = np.sqrt(_matched_beta_squared(m1, m2))
    alpha = 2.0 * np.log(m1) - 0.5 * np.log(m2)
    alpha_x = 2.0 * m1_x / m1 - 0.5 * m2_x / m2
    with np.errstate(divide='ignore', invalid='ignore'):
        beta_x = (0.5 * m2_x / m2 - m1_x / m1) / beta
    return alpha, beta, alpha_x, beta_x


def arithmetic_params(t: float, u: float, x: float, params: ModelParams) -> LogNormalParams:
    """Log-normal parameters matching the first two arithmetic-average moments"""
    alpha, beta, _, _ = arithmetic_alpha_beta(t, u, x, params)
    return LogNormalParams(alpha=float(alpha), beta=float(beta))


def hj_second_moment(t: float, u: float, x: float, params: ModelParams) -> float:
    """
    Hansen-Jorgensen second moment of the arithmetic ratio, stated for q = 0

    Kept as an independent expression for bias studies against the
    factorized cross term.
    """
    if params.q != 0:
        raise UnsupportedAveragingError("the Hansen-Jorgensen second moment is stated for q = 0 only")
    if not t > 0 or u < t:
        raise DomainError(f"need 0 < t <= u, got t={t}, u={u}")
    r, var = params.r, params.sigma ** 2
    tau = u - t
    first = x ** 2 * (t / u) ** 2 * np.exp(-2.0 * (r - 0.5 * var) * tau)
    second = x * 2.0 * t * np.exp(-r * tau) / u ** 2 * _decay_integral(r - var, np.asarray(tau))
    denominator = r * (r - 0.5 * var) * (r - var)
    if min(abs(r), abs(r - 0.5 * var), abs(r - var)) < LOGNORMAL_CONFIG['series_threshold']:
        third = 2.0 / u ** 2 * _double_decay_integral(r, r - var, np.asarray(tau))
    else:
        third = (
            (r - var) - 2.0 * (r - 0.5 * var) * np.exp(-r * tau) + r * np.exp(-2.0 * (r - 0.5 * var) * tau)
        ) / (u ** 2 * denominator)
    return float(first + second + third)
