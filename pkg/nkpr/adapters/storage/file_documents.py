"""File-based document repository implementation.

This adapter implements the IDocumentRepository interface for JSON files
on the local filesystem.
"""
from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Union

from nkpr.errors import InputFileError, MalformedDocumentError
from nkpr.ports.document_repository import IDocumentRepository

logger = logging.getLogger(__name__)


def _reject_constant(name: str) -> float:
    raise ValueError(f'non-finite number {name} is not allowed')


def _finite_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f'number {text} overflows a double')
    return value


class FileDocumentRepository(IDocumentRepository):
    """Reads JSON documents from disk, optionally relative to a base directory.

    Attributes:
        base_dir: Directory relative paths are resolved against
    """

    def __init__(self, base_dir: Union[str, Path, None] = None) -> None:
        self.base_dir = Path(base_dir) if base_dir is not None else Path.cwd()

    def _resolve(self, path: Union[str, Path]) -> Path:
        p = Path(path).expanduser()
        return p if p.is_absolute() else (self.base_dir / p).resolve()

    def load(self, path: Union[str, Path]) -> Dict[str, Any]:
        """Load one JSON object.

        Args:
            path: File to read

        Returns:
            The parsed top-level object

        Raises:
            InputFileError: if the file cannot be read
            MalformedDocumentError: if it is not an object of valid JSON with
                finite numbers
        """
        file = self._resolve(path)
        try:
            text = file.read_text(encoding='utf-8')
        except (OSError, UnicodeDecodeError) as e:
            raise InputFileError(f'cannot read {path}: {e}') from e
        try:
            document = json.loads(text, parse_constant=_reject_constant, parse_float=_finite_float)
        except ValueError as e:
            raise MalformedDocumentError(f'{path} is not valid JSON: {e}') from e
        if not isinstance(document, dict):
            raise MalformedDocumentError(f'{path} must hold a JSON object, got {type(document).__name__}')
        logger.debug('loaded %s (%d keys)', file, len(document))
        return document

    def exists(self, path: Union[str, Path]) -> bool:
        return self._resolve(path).is_file()
