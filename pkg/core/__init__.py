"""
Core package for the Asian option boundary toolkit
Parameter types, averaging kernels and PDE coefficients
"""

from core.exceptions import (
    AsianOptionError,
    DomainError,
    DegenerateDistributionError,
    BoundaryCoverageError,
    UnsupportedAveragingError,
    MomentConsistencyError,
    NonFiniteError,
    ConvergenceError,
    BracketError,
    FixedPointConvergenceError,
    PsorConvergenceError,
    PivotBreakdownError,
)
from core.model_core import (
    ModelParams,
    OptionKind,
    AveragingMethod,
    AveragingSpec,
    GridSpec,
    averaging_drift,
    reaction_coefficient,
    convection_coefficient,
)

__all__ = [
    'AsianOptionError',
    'DomainError',
    'DegenerateDistributionError',
    'BoundaryCoverageError',
    'UnsupportedAveragingError',
    'MomentConsistencyError',
    'NonFiniteError',
    'ConvergenceError',
    'BracketError',
    'FixedPointConvergenceError',
    'PsorConvergenceError',
    'PivotBreakdownError',
    'ModelParams',
    'OptionKind',
    'AveragingMethod',
    'AveragingSpec',
    'GridSpec',
    'averaging_drift',
    'reaction_coefficient',
    'convection_coefficient',
]
