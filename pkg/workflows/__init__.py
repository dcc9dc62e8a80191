"""
Workflows package: one orchestrator per command of the front end
"""

from workflows.base_workflow import BaseWorkflow
from workflows.boundary_workflow import BoundaryWorkflow, SurfaceWorkflow, solve_front_fixing
from workflows.comparison_workflow import CompareWorkflow, psor_options
from workflows.asymptotics_workflow import ExpiryWorkflow, HStarWorkflow, AsymptoteWorkflow, SweepWorkflow
from workflows.valuation_workflow import ValueWorkflow

WORKFLOWS = {
    'boundary': BoundaryWorkflow,
    'surface': SurfaceWorkflow,
    'compare': CompareWorkflow,
    'expiry': ExpiryWorkflow,
    'hstar': HStarWorkflow,
    'asymptote': AsymptoteWorkflow,
    'sweep': SweepWorkflow,
    'value': ValueWorkflow,
}

__all__ = [
    'BaseWorkflow',
    'BoundaryWorkflow',
    'SurfaceWorkflow',
    'CompareWorkflow',
    'ExpiryWorkflow',
    'HStarWorkflow',
    'AsymptoteWorkflow',
    'SweepWorkflow',
    'ValueWorkflow',
    'WORKFLOWS',
    'solve_front_fixing',
    'psor_options',
]
