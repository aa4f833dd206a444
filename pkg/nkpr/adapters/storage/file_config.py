"""File-based configuration repository implementation.

This adapter implements the IConfigRepository interface with an INI file
holding an ``[nkpr]`` section, e.g.::

    [nkpr]
    seed = 7
    shots = 20000
"""
from __future__ import annotations

import configparser
import logging
import math
from pathlib import Path
from typing import Any, Dict, Optional

from nkpr.errors import InputFileError, MalformedDocumentError
from nkpr.models.config import SETTING_MINIMUMS
from nkpr.ports.config_repository import IConfigRepository

logger = logging.getLogger(__name__)

SECTION = 'nkpr'


class FileConfigRepository(IConfigRepository):
    """INI file-based settings.

    Attributes:
        config_file: Path of the INI file (need not exist)
        default_config: Default settings dictionary
    """

    def __init__(
        self,
        config_file: Path,
        default_config: Optional[Dict[str, Any]] = None
    ) -> None:
        """Initialize file config repository.

        Args:
            config_file: INI file to read overrides from
            default_config: Default settings dictionary
        """
        self.config_file = Path(config_file)
        self.default_config = default_config or {}

    def load_config(self) -> Dict[str, Any]:
        """Load defaults overlaid with the ``[nkpr]`` section of the file.

        Returns:
            Dictionary of settings

        Raises:
            InputFileError: if the file exists but is not valid INI
            MalformedDocumentError: if a known setting has a value of the wrong type
        """
        config = self.get_default_config()
        if not self.config_exists():
            logger.debug('no config file at %s, using defaults', self.config_file)
            return config

        parser = configparser.ConfigParser()
        try:
            parser.read(self.config_file, encoding='utf-8')
        except (configparser.Error, OSError, UnicodeDecodeError) as e:
            raise InputFileError(f'cannot read config file {self.config_file}: {e}') from e

        if parser.has_section(SECTION):
            for key, value in parser.items(SECTION):
                if key not in self.default_config:
                    logger.warning('ignoring unknown setting %r in %s', key, self.config_file)
                    continue
                config[key] = self._coerce(key, value)
        logger.debug('settings after %s: %s', self.config_file, config)
        return config

    def get_default_config(self) -> Dict[str, Any]:
        """Get default configuration settings.

        Returns:
            Dictionary of default configuration settings
        """
        return dict(self.default_config)

    def config_exists(self) -> bool:
        return self.config_file.is_file()

    def _coerce(self, key: str, value: str) -> Any:
        """Convert an INI string to the type of the key's default.

        Raises:
            MalformedDocumentError: if the text does not parse as that type
                or falls below the setting's minimum
        """
        default = self.default_config[key]
        try:
            if isinstance(default, bool):
                parsed: Any = configparser.ConfigParser.BOOLEAN_STATES[value.lower()]
            elif isinstance(default, int):
                parsed = int(value)
            elif isinstance(default, float):
                parsed = float(value)
                if not math.isfinite(parsed):
                    raise ValueError(value)
            else:
                parsed = value
        except (KeyError, ValueError) as e:
            raise MalformedDocumentError(
                f'{self.config_file}: setting {key!r} expects {type(default).__name__}, got {value!r}') from e
        minimum = SETTING_MINIMUMS.get(key)
        if minimum is not None and parsed < minimum:
            raise MalformedDocumentError(
                f'{self.config_file}: setting {key!r} must be at least {minimum}, got {value!r}')
        return parsed
