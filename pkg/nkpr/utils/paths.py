"""Path and directory utilities."""
from __future__ import annotations

import os
import sys
from pathlib import Path

APP_NAME = 'nkpr'
CONFIG_FILE = 'config.ini'


def get_settings_path(name: str = APP_NAME) -> Path:
    """Get the per-user directory holding nkpr settings.

    Args:
        name: Application name

    Returns:
        Platform-appropriate settings directory (not created)
    """
    if sys.platform in ('cygwin', 'win32'):
        if 'APPDATA' in os.environ:
            return Path(os.environ['APPDATA']) / name
        return Path(f'~/{name}').expanduser()
    elif sys.platform == 'darwin':
        return Path(f'~/Library/Application Support/{name}').expanduser()
    else:  # on *nix, lowercase and without spaces (~/.nkpr)
        return Path(f'~/.{name.lower().replace(" ", "")}').expanduser()


def get_config_path(override: str | None = None) -> Path:
    """Get the config file path, preferring an explicit override.

    Args:
        override: Path given on the command line, if any

    Returns:
        Path to the INI config file (may not exist)
    """
    if override:
        return Path(override)
    return get_settings_path() / CONFIG_FILE


def resolve_input(path: str) -> Path:
    """Resolve a user-supplied input path against the working directory."""
    return Path(path).expanduser().resolve()
