"""Configuration models."""
from __future__ import annotations

from typing import Any, Dict


class dotdict(dict):
    """Dictionary subclass enabling attribute-style access to dictionary keys.

    Used for the settings object handed from the config repository to the
    application controller, so both settings['seed'] and settings.seed work.
    Missing keys read as None.

    Example:
        s = dotdict({'seed': 7})
        s.seed  # Returns 7
        s.tol = 1e-9  # Sets s['tol']
    """
    def __getattr__(self, attr: str) -> Any:
        return self.get(attr, None)
    __setattr__ = dict.__setitem__
    __delattr__ = dict.__delitem__


# Defaults for every CLI flag that may be omitted. Keys are lower case, the
# same spelling used in the [nkpr] section of config.ini.
DEFAULT_SETTINGS: Dict[str, Any] = {
    'seed': 0,
    'significant_digits': 12,
    'samples': 100,
    'tol': 1e-9,
    'trials': 10000,
    'shots': 10000,
    'debug': False,
}

# Lower bounds for numeric settings, matching the CLI flag checks.
SETTING_MINIMUMS: Dict[str, Any] = {
    'significant_digits': 1,
    'samples': 0,
    'tol': 0.0,
    'trials': 1,
    'shots': 1,
}
