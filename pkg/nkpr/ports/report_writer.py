"""Report writer port interface."""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Mapping


class IReportWriter(ABC):
    """Interface for emitting the single result document of a command."""

    @abstractmethod
    def write(self, document: Mapping[str, Any]) -> str:
        """Serialize and emit a report.

        Args:
            document: JSON-compatible mapping (numpy scalars allowed)

        Returns:
            The serialized text exactly as emitted
        """
        pass
