"""
Exception hierarchy for the Asian option boundary toolkit
"""

from typing import Any, Dict, Optional


class AsianOptionError(Exception):
    """Base class for all toolkit errors"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details = details or {}


class DomainError(AsianOptionError, ValueError):
    """Argument outside the domain where a formula is defined"""


class DegenerateDistributionError(DomainError):
    """Log-normal parameters with non-positive standard deviation"""


class BoundaryCoverageError(DomainError):
    """Boundary curve does not cover the requested time interval"""


class UnsupportedAveragingError(AsianOptionError, NotImplementedError):
    """Operation has no formula for the requested averaging method"""


class MomentConsistencyError(AsianOptionError, ArithmeticError):
    """Second moment below the squared first moment beyond roundoff"""


class NonFiniteError(AsianOptionError, ArithmeticError):
    """A numerical scheme produced a non-finite value"""


class ConvergenceError(AsianOptionError, RuntimeError):
    """Iterative method failed to reach its tolerance"""


class BracketError(ConvergenceError):
    """Root finder could not bracket a sign change"""


class FixedPointConvergenceError(ConvergenceError):
    """Boundary fixed-point iteration stalled at a time level"""

    def __init__(self, level: int, residual: float, iterations: int):
        super().__init__(
            f"fixed-point iteration did not converge at time level {level}: "
            f"residual {residual:.3e} after {iterations} iterations",
            {'level': level, 'residual': residual, 'iterations': iterations},
        )
        self.level = level
        self.residual = residual


class PsorConvergenceError(ConvergenceError):
    """PSOR sweeps hit the iteration cap at a time level"""

    def __init__(self, level: int, update: float, iterations: int):
        super().__init__(
            f"PSOR did not converge at time level {level}: "
            f"last update {update:.3e} after {iterations} sweeps",
            {'level': level, 'update': update, 'iterations': iterations},
        )
        self.level = level
        self.update = update


class PivotBreakdownError(AsianOptionError, ArithmeticError):
    """Zero or non-finite pivot in the Thomas elimination"""

    def __init__(self, row: int, grid: Dict[str, Any]):
        super().__init__(f"tridiagonal pivot breakdown at row {row} (grid {grid})", dict(grid, row=row))
        self.row = row
