"""
Base workflow orchestrator for the command-line front end
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

import pandas as pd

from tools.csv_tools import write_csv
from tools.run_config import RunConfig

logger = logging.getLogger(__name__)


class BaseWorkflow(ABC):
    """Base class for all command workflows"""

    def __init__(self, name: str, description: str):
        """Initialize the workflow with name and description"""
        self.name = name
        self.description = description

    @abstractmethod
    def run(self, config: RunConfig) -> Dict[str, Any]:
        """
        Run the workflow

        Args:
            config: Parameters of this invocation

        Returns:
            Dictionary with 'success', 'summary', 'frame' and on failure
            'error' and 'failed_stage'
        """

    def _start(self, config: RunConfig) -> Dict[str, Any]:
        logger.info(f"Starting {self.name} workflow")
        return {
            "workflow": self.name,
            "header": config.header(),
            "summary": {},
            "frame": None,
            "outputs": [],
            "success": False,
        }

    def _write(
        self, results: Dict[str, Any], frame: pd.DataFrame, path: Optional[str], header: Optional[Dict[str, Any]] = None
    ) -> None:
        written = write_csv(frame, path, header or results["header"])
        if written:
            results["outputs"].append(written)

    def _fail(self, results: Dict[str, Any], stage: str, error: Exception) -> Dict[str, Any]:
        logger.error(f"Error in {self.name} at stage {stage}: {error}")
        results["success"] = False
        results["error"] = str(error)
        results["failed_stage"] = stage
        return results
