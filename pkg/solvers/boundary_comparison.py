"""
Cross-method diagnostics for boundary curves
"""

import logging
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from analytics.integral_pricer import BoundaryCurve
from core.exceptions import DomainError

logger = logging.getLogger(__name__)


class BoundaryComparison(BaseModel):
    """Distances between two boundaries on a common tau grid, with both minima"""

    model_config = ConfigDict(frozen=True)

    linf: float = Field(..., ge=0)
    l1: float = Field(..., ge=0)
    min_first: float
    min_second: float
    n_points: int


class ExpirySlopeFit(BaseModel):
    """Least-squares fit x*(t) = c0 + c1 sqrt(T - t) near expiry"""

    model_config = ConfigDict(frozen=True)

    intercept: float
    slope: float
    h_estimate: float
    n_points: int


def compare_boundaries(
    first: BoundaryCurve,
    second: BoundaryCurve,
    taus: Optional[np.ndarray] = None,
) -> BoundaryComparison:
    """
    Discrete L-infinity and L1(0, T) distances of x* between two curves

    Args:
        first: Reference boundary, its tau grid is the default comparison grid
        second: Boundary interpolated onto the comparison grid
        taus: Optional explicit comparison grid inside both curves

    Returns:
        BoundaryComparison; L1 is the trapezoid integral of |x*_1 - x*_2| over tau
    """
    if not np.isclose(first.T, second.T):
        raise DomainError(f"boundaries have different maturities {first.T} and {second.T}")
    grid = first.taus if taus is None else np.asarray(taus, dtype=float)
    lo = max(first.taus[0], second.taus[0])
    hi = min(first.taus[-1], second.taus[-1])
    if grid[0] < lo - 1e-12 or grid[-1] > hi + 1e-12:
        raise DomainError(f"comparison grid [{grid[0]}, {grid[-1]}] outside the common range [{lo}, {hi}]")

    x_first = 1.0 / first.rho_at(grid)
    x_second = 1.0 / second.rho_at(grid)
    gap = np.abs(x_first - x_second)
    result = BoundaryComparison(
        linf=float(np.max(gap)),
        l1=float(np.trapezoid(gap, grid)),
        min_first=float(np.min(x_first)),
        min_second=float(np.min(x_second)),
        n_points=len(grid),
    )
    logger.info(f"Boundary comparison: Linf={result.linf:.5f}, L1={result.l1:.5f}")
    return result


def fit_expiry_slope(boundary: BoundaryCurve, G: float, sigma: float, fraction: float = 0.02) -> ExpirySlopeFit:
    """
    Regress the boundary on sqrt(T - t) over the last fraction of the tau grid

    The slope estimates h* sigma G, so h_estimate = slope / (sigma G).
    """
    if not 0.0 < fraction <= 1.0:
        raise DomainError(f"fraction must lie in (0, 1], got {fraction}")
    mask = (boundary.taus > 0.0) & (boundary.taus <= fraction * boundary.T)
    if np.count_nonzero(mask) < 2:
        raise DomainError(f"fewer than two boundary nodes in the final {fraction:.2%} of the grid")
    root = np.sqrt(boundary.taus[mask])
    x_star = 1.0 / boundary.rhos[mask]
    slope, intercept = np.polyfit(root, x_star, 1)
    return ExpirySlopeFit(
        intercept=float(intercept),
        slope=float(slope),
        h_estimate=float(slope / (sigma * G)),
        n_points=int(np.count_nonzero(mask)),
    )
