"""Configuration repository port interface."""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Dict


class IConfigRepository(ABC):
    """Interface for loading user settings.

    The controller asks this port for the values that fill in omitted
    command-line flags (seed, shots, trials, samples, tol, ...), so it does
    not depend on where those overrides are stored.
    """

    @abstractmethod
    def load_config(self) -> Dict[str, Any]:
        """Load settings, defaults overlaid with stored overrides.

        Returns:
            Dictionary of settings keyed by lower-case name
        """
        pass

    @abstractmethod
    def get_default_config(self) -> Dict[str, Any]:
        """Get default settings.

        Returns:
            Dictionary of default settings
        """
        pass

    @abstractmethod
    def config_exists(self) -> bool:
        """Check whether stored overrides exist.

        Returns:
            True if an override source is present
        """
        pass
