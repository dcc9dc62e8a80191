"""
Base Guardrail class for numerical invariant monitoring in the solvers.
"""
from abc import ABC, abstractmethod
import logging
from typing import Any, Dict, List, Optional, Tuple

logger = logging.getLogger(__name__)


class BaseGuardrail(ABC):
    """
    Abstract base class for all guardrails in the toolkit.

    A guardrail inspects an intermediate numerical result (a solution row,
    a boundary value) against an invariant the exact solution satisfies.
    Violations are logged and counted; they never alter the payload.
    """

    def __init__(self, name: str, description: str, config: Optional[Dict[str, Any]] = None):
        """
        Initialize the guardrail.

        Args:
            name: Unique identifier for this guardrail
            description: Human-readable description of the invariant
            config: Configuration parameters (tolerances)
        """
        self.name = name
        self.description = description
        self.config = config or {}
        self.metrics = {
            "invocations": 0,
            "violations": 0,
            "passes": 0,
            "worst": 0.0,
        }
        logger.debug(f"Initialized guardrail: {name}")

    @abstractmethod
    def process(self, payload: Dict[str, Any]) -> Tuple[Dict[str, Any], Dict[str, Any]]:
        """
        Check a payload against the invariant.

        Args:
            payload: Dictionary with the arrays to check and a 'level' key

        Returns:
            Tuple containing:
                - The unchanged payload
                - A result dictionary with 'violated', 'magnitude' and 'level'
        """

    def log_event(self, event_type: str, details: Dict[str, Any]) -> None:
        """
        Record a check outcome.

        Args:
            event_type: 'violation' or 'pass'
            details: Details about the event
        """
        self.metrics["invocations"] += 1
        if event_type == "violation":
            self.metrics["violations"] += 1
            self.metrics["worst"] = max(self.metrics["worst"], float(details.get("magnitude", 0.0)))
            # warn once per guardrail, then keep counting quietly
            if self.metrics["violations"] == 1:
                logger.warning(f"Guardrail {self.name} - violation: {details}")
            else:
                logger.debug(f"Guardrail {self.name} - violation: {details}")
        else:
            self.metrics["passes"] += 1

    def get_metrics(self) -> Dict[str, Any]:
        """
        Get counters for this guardrail.

        Returns:
            Dictionary of metrics
        """
        return dict(self.metrics)

    def __str__(self) -> str:
        return f"{self.name}: {self.description}"


class GuardrailChain:
    """
    Run several guardrails over the same payload.
    """

    def __init__(self, guardrails: List[BaseGuardrail], monitor: Optional[Any] = None):
        """
        Initialize with a list of guardrails.

        Args:
            guardrails: Guardrails to apply
            monitor: Optional GuardrailMonitor receiving every violation
        """
        self.guardrails = guardrails
        self.monitor = monitor

    def process(self, payload: Dict[str, Any]) -> Dict[str, Any]:
        """
        Check a payload with every guardrail in the chain.

        Returns:
            Dictionary with per-guardrail results and a 'violated' flag
        """
        results: Dict[str, Any] = {"guardrail_results": [], "violated": False}
        for guardrail in self.guardrails:
            _, result = guardrail.process(payload)
            results["guardrail_results"].append({"guardrail": guardrail.name, "result": result})
            if result.get("violated", False):
                results["violated"] = True
                if self.monitor is not None:
                    self.monitor.log_event(guardrail.name, "violation", result)
        return results

    def get_metrics(self) -> Dict[str, Dict[str, Any]]:
        return {guardrail.name: guardrail.get_metrics() for guardrail in self.guardrails}
