"""
Solvers package for the early exercise boundary
Front-fixing and PSOR schemes, the Thomas kernel and cross-method diagnostics
"""

from solvers.base_solver import BaseSolver
from solvers.tridiagonal import solve_tridiagonal, is_diagonally_dominant
from solvers.front_fixing_solver import (
    FrontFixingSolver,
    FrontFixingOptions,
    PortfolioSurface,
    SolverReport,
    solve,
    extract_boundary,
    pointwise_boundary_residual,
    explicit_rho,
)
from solvers.psor_solver import PsorSolver, PsorOptions, PsorResult, ValueSurface, solve_psor, value_at, option_value
from solvers.boundary_comparison import BoundaryComparison, ExpirySlopeFit, compare_boundaries, fit_expiry_slope

__all__ = [
    'BaseSolver',
    'solve_tridiagonal',
    'is_diagonally_dominant',
    'FrontFixingSolver',
    'FrontFixingOptions',
    'PortfolioSurface',
    'SolverReport',
    'solve',
    'extract_boundary',
    'pointwise_boundary_residual',
    'explicit_rho',
    'PsorSolver',
    'PsorOptions',
    'PsorResult',
    'ValueSurface',
    'solve_psor',
    'value_at',
    'option_value',
    'BoundaryComparison',
    'ExpirySlopeFit',
    'compare_boundaries',
    'fit_expiry_slope',
]
