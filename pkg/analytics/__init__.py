"""
Analytics package
Closed-form and quadrature-based pieces: expiry asymptotics, log-normal
distribution parameters and the integral price representation
"""

from analytics.quadrature import gauss_legendre, sqrt_substitution
from analytics.lognormal_engine import (
    SecondMomentForm,
    LogNormalParams,
    MomentPair,
    TruncatedExpectations,
    truncated_expectations,
    geometric_params,
    arithmetic_moments,
    arithmetic_params,
    hj_second_moment,
)
from analytics.expiry_asymptotics import (
    ExerciseBranch,
    ExpiryLimit,
    AsymptoteCoefficients,
    expiry_limit,
    solve_geometric_transcendental,
    h_equation_rhs,
    solve_h_star,
    asymptote_coefficients,
    boundary_asymptote,
    expiry_limit_sweep,
)
from analytics.integral_pricer import (
    BoundaryCurve,
    PriceDecomposition,
    european_value,
    exercise_premium,
    price_decomposition,
    option_value_original,
    smooth_pasting_residual,
)

__all__ = [
    'gauss_legendre',
    'sqrt_substitution',
    'SecondMomentForm',
    'LogNormalParams',
    'MomentPair',
    'TruncatedExpectations',
    'truncated_expectations',
    'geometric_params',
    'arithmetic_moments',
    'arithmetic_params',
    'hj_second_moment',
    'ExerciseBranch',
    'ExpiryLimit',
    'AsymptoteCoefficients',
    'expiry_limit',
    'solve_geometric_transcendental',
    'h_equation_rhs',
    'solve_h_star',
    'asymptote_coefficients',
    'boundary_asymptote',
    'expiry_limit_sweep',
    'BoundaryCurve',
    'PriceDecomposition',
    'european_value',
    'exercise_premium',
    'price_decomposition',
    'option_value_original',
    'smooth_pasting_residual',
]
