"""
Monitoring of guardrail events raised during a solver run.
"""
import logging
from collections import Counter
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


class GuardrailMonitor:
    """
    In-memory record of guardrail violations for one run.

    Keeps the first `max_events` events in arrival order plus per-guardrail
    counters, and renders a summary for solver reports and CLI headers.
    """

    def __init__(self, max_events: int = 1000):
        """
        Initialize the guardrail monitor.

        Args:
            max_events: Number of events retained verbatim
        """
        self.max_events = max_events
        self.events: List[Dict[str, Any]] = []
        self.counts: Counter = Counter()

    def log_event(self, guardrail_name: str, event_type: str, details: Optional[Dict[str, Any]] = None) -> None:
        """
        Record an event.

        Args:
            guardrail_name: Name of the guardrail that fired
            event_type: Event type, usually 'violation'
            details: Result dictionary from the guardrail
        """
        self.counts[(guardrail_name, event_type)] += 1
        if len(self.events) < self.max_events:
            self.events.append({"guardrail": guardrail_name, "event_type": event_type, "details": details or {}})

    def get_metrics(self) -> Dict[str, Dict[str, int]]:
        """
        Counters grouped by guardrail.

        Returns:
            {guardrail_name: {event_type: count}}
        """
        metrics: Dict[str, Dict[str, int]] = {}
        for (name, event_type), count in sorted(self.counts.items()):
            metrics.setdefault(name, {})[event_type] = count
        return metrics

    def get_recent_events(self, limit: int = 10) -> List[Dict[str, Any]]:
        return self.events[-limit:]

    def generate_audit_report(self) -> Dict[str, Any]:
        """
        Summary of the run.

        Returns:
            Dictionary with total violations, per-guardrail counts and the first event
        """
        total = sum(count for (_, event_type), count in self.counts.items() if event_type == "violation")
        return {
            "total_violations": total,
            "by_guardrail": self.get_metrics(),
            "first_event": self.events[0] if self.events else None,
        }
