"""
Guardrails package: numerical invariant monitors for the solvers
"""

from guardrails.base_guardrail import BaseGuardrail, GuardrailChain
from guardrails.guardrail_monitor import GuardrailMonitor
from guardrails.numerical_guardrails import (
    PortfolioRangeGuardrail,
    ObstacleGuardrail,
    ComplementarityGuardrail,
    BoundaryEnvelopeGuardrail,
)

__all__ = [
    'BaseGuardrail',
    'GuardrailChain',
    'GuardrailMonitor',
    'PortfolioRangeGuardrail',
    'ObstacleGuardrail',
    'ComplementarityGuardrail',
    'BoundaryEnvelopeGuardrail',
]
