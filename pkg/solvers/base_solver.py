"""
Base solver for the early exercise boundary problems
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

import numpy as np

from core.exceptions import NonFiniteError
from guardrails.base_guardrail import GuardrailChain
from guardrails.guardrail_monitor import GuardrailMonitor

logger = logging.getLogger(__name__)


class BaseSolver(ABC):
    """Base class for all boundary solvers"""

    def __init__(self, name: str, description: str, config: Optional[Dict[str, Any]] = None):
        """Initialize the solver with name, description and tolerances"""
        self.name = name
        self.description = description
        self.config = config or {}
        self.monitor = GuardrailMonitor()
        self.guardrails = GuardrailChain([], monitor=self.monitor)

    @abstractmethod
    def solve(self) -> Any:
        """
        Run the time march

        Returns:
            Solver-specific report
        """

    def _require_finite(self, value: Any, what: str, level: int) -> None:
        if not np.all(np.isfinite(value)):
            logger.error(f"{self.name}: non-finite {what} at time level {level}")
            raise NonFiniteError(f"non-finite {what} at time level {level}", {'level': level})

    def guardrail_summary(self) -> Dict[str, Any]:
        report = self.monitor.generate_audit_report()
        report['checks'] = self.guardrails.get_metrics()
        return report
