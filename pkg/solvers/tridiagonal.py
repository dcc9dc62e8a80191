"""
Tridiagonal matrix algorithm
"""

import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np
from numba import njit

from core.exceptions import PivotBreakdownError

logger = logging.getLogger(__name__)

_PIVOT_FLOOR = 1e-300

__all__ = ['solve_tridiagonal', 'is_diagonally_dominant']


@njit(cache=True)
def _thomas(lower, diag, upper, rhs):
    n = diag.shape[0]
    c_prime = np.empty(n)
    d_prime = np.empty(n)
    x = np.empty(n)

    pivot = diag[0]
    if not np.isfinite(pivot) or abs(pivot) < _PIVOT_FLOOR:
        return x, 0
    c_prime[0] = upper[0] / pivot
    d_prime[0] = rhs[0] / pivot

    # forward elimination
    for i in range(1, n):
        pivot = diag[i] - lower[i] * c_prime[i - 1]
        if not np.isfinite(pivot) or abs(pivot) < _PIVOT_FLOOR:
            return x, i
        c_prime[i] = upper[i] / pivot
        d_prime[i] = (rhs[i] - lower[i] * d_prime[i - 1]) / pivot

    # back substitution
    x[n - 1] = d_prime[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = d_prime[i] - c_prime[i] * x[i + 1]
    return x, -1


def solve_tridiagonal(
    lower: np.ndarray,
    diag: np.ndarray,
    upper: np.ndarray,
    rhs: np.ndarray,
    grid: Optional[Dict[str, Any]] = None,
) -> np.ndarray:
    '''Solves A x = rhs for tridiagonal A.

    Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i];
    lower[0] and upper[-1] are ignored.

    Args:
        lower: Sub-diagonal, same length as diag
        diag: Main diagonal
        upper: Super-diagonal, same length as diag
        rhs: Right-hand side
        grid: Grid description attached to a pivot breakdown error

    Returns:
        Solution vector
    '''
    arrays = [np.ascontiguousarray(a, dtype=np.float64) for a in (lower, diag, upper, rhs)]
    if any(a.ndim != 1 or a.shape != arrays[1].shape for a in arrays):
        raise ValueError('Tridiagonal bands and right-hand side must be vectors of equal length.')
    x, bad_row = _thomas(*arrays)
    if bad_row >= 0:
        logger.error(f"Pivot breakdown at row {bad_row} of {len(x)}")
        raise PivotBreakdownError(bad_row, grid or {'size': len(x)})
    return x


def is_diagonally_dominant(lower: np.ndarray, diag: np.ndarray, upper: np.ndarray) -> Tuple[bool, int]:
    """Weak row diagonal dominance and the first offending row (-1 if none)"""
    off = np.abs(lower) + np.abs(upper)
    off[0] = abs(upper[0])
    off[-1] = abs(lower[-1])
    bad = np.nonzero(np.abs(diag) < off)[0]
    return (len(bad) == 0, int(bad[0]) if len(bad) else -1)
