"""
Numerical invariant guardrails for the boundary solvers.
"""
from typing import Any, Dict, Optional, Tuple
import logging

import numpy as np

from .base_guardrail import BaseGuardrail

logger = logging.getLogger(__name__)


class PortfolioRangeGuardrail(BaseGuardrail):
    """
    Checks that the synthesized portfolio stays within [-1 - eps, eps].
    """

    def __init__(self, eps: float = 1e-6, config: Optional[Dict[str, Any]] = None):
        super().__init__(
            name="portfolio_range",
            description="Portfolio values stay in [-1 - eps, eps]",
            config=config or {},
        )
        self.eps = eps

    def process(self, payload: Dict[str, Any]) -> Tuple[Dict[str, Any], Dict[str, Any]]:
        row = np.asarray(payload["row"])
        excess = max(float(np.max(row)) - self.eps, -1.0 - self.eps - float(np.min(row)), 0.0)
        result = {"violated": excess > 0.0, "magnitude": excess, "level": payload.get("level")}
        self.log_event("violation" if result["violated"] else "pass", result)
        return payload, result


class ObstacleGuardrail(BaseGuardrail):
    """
    Checks that a value row dominates its obstacle.
    """

    def __init__(self, tol: float = 0.0, config: Optional[Dict[str, Any]] = None):
        super().__init__(
            name="obstacle_dominance",
            description="Value never falls below the exercise payoff",
            config=config or {},
        )
        self.tol = tol

    def process(self, payload: Dict[str, Any]) -> Tuple[Dict[str, Any], Dict[str, Any]]:
        gap = np.asarray(payload["values"]) - np.asarray(payload["obstacle"])
        deficit = max(-float(np.min(gap)) - self.tol, 0.0)
        result = {"violated": deficit > 0.0, "magnitude": deficit, "level": payload.get("level")}
        self.log_event("violation" if result["violated"] else "pass", result)
        return payload, result


class ComplementarityGuardrail(BaseGuardrail):
    """
    Checks (W - psi) * residual at interior nodes of a converged PSOR step.
    """

    def __init__(self, tol: float = 1e-6, config: Optional[Dict[str, Any]] = None):
        super().__init__(
            name="complementarity",
            description="Contact gap times equation residual vanishes",
            config=config or {},
        )
        self.tol = tol

    def process(self, payload: Dict[str, Any]) -> Tuple[Dict[str, Any], Dict[str, Any]]:
        gap = np.asarray(payload["values"]) - np.asarray(payload["obstacle"])
        product = float(np.max(np.abs(gap * np.asarray(payload["residual"])))) if len(gap) else 0.0
        result = {"violated": product > self.tol, "magnitude": product, "level": payload.get("level")}
        self.log_event("violation" if result["violated"] else "pass", result)
        return payload, result


class BoundaryEnvelopeGuardrail(BaseGuardrail):
    """
    Checks that a boundary value is finite and inside a plausible envelope.
    """

    def __init__(self, low: float = 0.0, high: float = np.inf, config: Optional[Dict[str, Any]] = None):
        super().__init__(
            name="boundary_envelope",
            description="Boundary value finite and inside (low, high)",
            config=config or {},
        )
        self.low = low
        self.high = high

    def process(self, payload: Dict[str, Any]) -> Tuple[Dict[str, Any], Dict[str, Any]]:
        value = float(payload["boundary"])
        inside = np.isfinite(value) and self.low < value < self.high
        magnitude = 0.0 if inside else (abs(value) if np.isfinite(value) else np.inf)
        result = {"violated": not inside, "magnitude": magnitude, "level": payload.get("level"), "value": value}
        self.log_event("violation" if result["violated"] else "pass", result)
        return payload, result
