"""
Expiry asymptotics of the early exercise boundary
Handles the expiry limit, the geometric transcendental root, the universal
constant h* and the square-root expansion near expiry
"""

import logging
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from analytics.lognormal_engine import normal_cdf, normal_pdf
from analytics.quadrature import gauss_legendre
from config.config import MODEL_DEFAULTS, QUADRATURE_CONFIG, ROOT_FINDING_CONFIG
from core.exceptions import BracketError, ConvergenceError, DomainError, UnsupportedAveragingError
from core.model_core import AveragingMethod, AveragingSpec, ModelParams, OptionKind

logger = logging.getLogger(__name__)


class ExerciseBranch(str, Enum):
    """Which case of the expiry limit fired"""

    IN_THE_MONEY = 'in_the_money'
    AT_THE_MONEY = 'at_the_money'


class ExpiryLimit(BaseModel):
    """Boundary position x*_T at expiry"""

    model_config = ConfigDict(frozen=True)

    x_star_T: float = Field(..., gt=0)
    branch: ExerciseBranch


class AsymptoteCoefficients(BaseModel):
    """Coefficients of x*_t = G (1 + h* sigma sqrt(T - t))"""

    model_config = ConfigDict(frozen=True)

    G: float = Field(..., gt=0)
    h_star: float = Field(..., lt=0)
    sigma: float = Field(..., gt=0)

    def evaluate(self, remaining: float) -> float:
        return self.G * (1.0 + self.h_star * self.sigma * np.sqrt(remaining))


def _geometric_residual(x: float, params: ModelParams) -> float:
    return np.log(x) - params.q * params.T / x + params.r * params.T


def solve_geometric_transcendental(params: ModelParams) -> float:
    """
    Root of ln x = qT/x - rT

    The residual is strictly increasing in x, so the root is bracketed on
    (0, max(1, q/r) + 1] after halving the lower end until the sign flips.

    Args:
        params: Model parameters

    Returns:
        The unique positive root
    """
    upper = max(1.0, params.q / params.r) + 1.0
    if _geometric_residual(upper, params) <= 0:
        raise BracketError(f"geometric expiry equation not bracketed at x_hi={upper}")
    lower = min(1.0, upper / 2.0)
    for _ in range(ROOT_FINDING_CONFIG['max_halvings']):
        if _geometric_residual(lower, params) < 0:
            break
        lower /= 2.0
    else:
        raise BracketError(f"geometric expiry equation not bracketed above zero for {params}")

    try:
        root = brentq(
            _geometric_residual,
            lower,
            upper,
            args=(params,),
            xtol=ROOT_FINDING_CONFIG['xtol'],
            rtol=4 * np.finfo(float).eps,
            maxiter=ROOT_FINDING_CONFIG['max_iter'],
        )
    except RuntimeError as e:
        logger.error(f"Geometric expiry root failed: {e}")
        raise ConvergenceError(str(e)) from e

    residual = abs(_geometric_residual(root, params))
    if residual >= ROOT_FINDING_CONFIG['residual_tol']:
        raise ConvergenceError(f"geometric expiry root residual {residual:.3e} above tolerance")
    return float(root)


def _clamp(inner: float, kind: OptionKind) -> ExpiryLimit:
    if kind is OptionKind.CALL:
        clamped = min(inner, 1.0)
    else:
        clamped = max(inner, 1.0)
    branch = ExerciseBranch.AT_THE_MONEY if clamped == 1.0 else ExerciseBranch.IN_THE_MONEY
    return ExpiryLimit(x_star_T=clamped, branch=branch)


def expiry_limit(params: ModelParams, avg: AveragingSpec, kind: OptionKind) -> ExpiryLimit:
    """
    Limit of the early exercise boundary as t approaches T

    Args:
        params: Model parameters
        avg: Averaging operator
        kind: Call or put

    Returns:
        ExpiryLimit with the clamped value and the branch that fired
    """
    r, q, T = params.r, params.q, params.T
    if avg.method is AveragingMethod.ARITHMETIC:
        inner = (q + 1.0 / T) / (r + 1.0 / T)
    elif avg.method is AveragingMethod.GEOMETRIC:
        inner = solve_geometric_transcendental(params)
    else:
        decay = -np.expm1(-avg.lam * T)
        inner = (q * decay + avg.lam) / (r * decay + avg.lam)
    return _clamp(float(inner), kind)


def _h_equation_nodes(n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    # theta = s^2; g = (1 - sqrt(1 - theta)) / sqrt(theta) = s / (1 + sqrt(1 - s^2))
    s, w = gauss_legendre(n, 0.0, 1.0)
    root = np.sqrt(1.0 - s ** 2)
    return s, s / (1.0 + root), w, root


def h_equation_rhs(h: float, quadrature_points: int = QUADRATURE_CONFIG['h_star_nodes']) -> float:
    """Right-hand side of the h-equation, written in s with theta = s^2"""
    s, g, w, root = _h_equation_nodes(quadrature_points)
    first = np.sum(w * 2.0 * s * normal_cdf(-h * g))
    second = np.sum(w * 2.0 * root * normal_pdf(-h * g))
    return float(1.0 - first + h * second)


@lru_cache(maxsize=8)
def solve_h_star(quadrature_points: int = QUADRATURE_CONFIG['h_star_nodes']) -> float:
    """
    Universal slope constant h* of the near-expiry boundary expansion

    Args:
        quadrature_points: Gauss-Legendre nodes on the substituted integrals

    Returns:
        The root of the h-equation on the default bracket
    """
    if quadrature_points < 64:
        raise DomainError(f"h-equation needs at least 64 quadrature points, got {quadrature_points}")
    low, high = QUADRATURE_CONFIG['h_star_bracket']
    f_low = h_equation_rhs(low, quadrature_points)
    f_high = h_equation_rhs(high, quadrature_points)
    if f_low * f_high >= 0:
        raise BracketError(f"h-equation not bracketed on [{low}, {high}]: {f_low:.3e}, {f_high:.3e}")
    h_star = brentq(h_equation_rhs, low, high, args=(quadrature_points,), xtol=1e-14, maxiter=200)
    logger.debug(f"h* = {h_star:.10f} with {quadrature_points} nodes")
    return float(h_star)


def asymptote_coefficients(params: ModelParams, avg: AveragingSpec) -> AsymptoteCoefficients:
    """Coefficients of the call boundary expansion; needs r > q"""
    if avg.method is AveragingMethod.WEIGHTED:
        raise UnsupportedAveragingError("no near-expiry expansion for weighted averaging")
    if not params.r > params.q:
        raise DomainError(f"near-expiry expansion needs r > q, got r={params.r}, q={params.q}")
    G = expiry_limit(params, avg, OptionKind.CALL).x_star_T
    return AsymptoteCoefficients(G=G, h_star=solve_h_star(), sigma=params.sigma)


def boundary_asymptote(params: ModelParams, avg: AveragingSpec, t: float) -> float:
    """
    First-order expansion G (1 + h* sigma sqrt(T - t)) of the call boundary

    Args:
        params: Model parameters with r > q
        avg: Arithmetic or geometric averaging
        t: Time in [0, T]

    Returns:
        Approximate boundary position x*_t
    """
    if not 0.0 <= t <= params.T:
        raise DomainError(f"time must lie in [0, T], got t={t}")
    return asymptote_coefficients(params, avg).evaluate(params.T - t)


def expiry_limit_sweep(
    r_range: Tuple[float, float],
    q_range: Tuple[float, float],
    avg: AveragingSpec,
    kind: OptionKind,
    steps: int,
    T: float,
    r_values: Optional[Sequence[float]] = None,
    q_values: Optional[Sequence[float]] = None,
) -> pd.DataFrame:
    """
    Expiry limits on a rectangular (r, q) grid

    Args:
        r_range: Inclusive (low, high) interest-rate range, low > 0
        q_range: Inclusive (low, high) dividend range, low >= 0
        avg: Averaging operator
        kind: Call or put
        steps: Points per axis
        T: Maturity
        r_values: Explicit r axis overriding r_range
        q_values: Explicit q axis overriding q_range

    Returns:
        Long-format frame with columns r, q, x_star_T, row-major in r
    """
    rs = np.asarray(r_values if r_values is not None else np.linspace(r_range[0], r_range[1], steps), dtype=float)
    qs = np.asarray(q_values if q_values is not None else np.linspace(q_range[0], q_range[1], steps), dtype=float)
    if np.any(rs <= 0) or np.any(qs < 0):
        raise DomainError("sweep needs r > 0 and q >= 0 on the whole grid")

    rows = []
    for r in rs:
        for q in qs:
            # volatility does not enter the limit
            params = ModelParams(r=float(r), q=float(q), sigma=MODEL_DEFAULTS['sigma'], T=T)
            try:
                limit = expiry_limit(params, avg, kind)
            except ConvergenceError as e:
                raise ConvergenceError(f"expiry limit failed at r={r}, q={q}: {e}", {'r': r, 'q': q}) from e
            rows.append({'r': float(r), 'q': float(q), 'x_star_T': limit.x_star_T})
    return pd.DataFrame(rows, columns=['r', 'q', 'x_star_T'])
