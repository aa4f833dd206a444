"""JSON report writer for standard output.

This adapter implements the IReportWriter interface. Reports are rounded to
a fixed number of significant digits and serialized with sorted keys, so
identical runs produce byte-identical output.
"""
from __future__ import annotations

import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Mapping, Optional, TextIO, Union

import numpy as np

from nkpr.errors import InputFileError
from nkpr.ports.report_writer import IReportWriter

logger = logging.getLogger(__name__)


def round_significant(x: float, digits: int) -> float:
    """Round to ``digits`` significant digits; -0.0 becomes 0.0."""
    if not math.isfinite(x):
        return x
    return float(f'{x:.{digits}g}') + 0.0


def normalize(value: Any, digits: int) -> Any:
    """Turn a report into plain JSON types with rounded floats."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return round_significant(float(value), digits)
    if isinstance(value, Mapping):
        return {str(k): normalize(v, digits) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return normalize(value.tolist(), digits)
    if isinstance(value, (list, tuple)):
        return [normalize(v, digits) for v in value]
    return value


class JsonReportWriter(IReportWriter):
    """Writes one JSON document to a stream and optionally to a file.

    Attributes:
        digits: Significant digits kept for every float
        stream: Text stream for the report (standard output by default)
        out_path: Additional file receiving the same text, if any
    """

    def __init__(self, digits: int = 12, stream: Optional[TextIO] = None,
                 out_path: Union[str, Path, None] = None) -> None:
        self.digits = digits
        self.stream = stream if stream is not None else sys.stdout
        self.out_path = Path(out_path) if out_path is not None else None

    def render(self, document: Mapping[str, Any]) -> str:
        return json.dumps(normalize(document, self.digits), sort_keys=True, allow_nan=False) + '\n'

    def write(self, document: Mapping[str, Any]) -> str:
        """Serialize ``document`` and emit it.

        The ``out_path`` copy is written first, so a failed file write
        leaves the stream untouched.

        Raises:
            InputFileError: if ``out_path`` cannot be written
        """
        text = self.render(document)
        if self.out_path is not None:
            try:
                self.out_path.write_text(text, encoding='utf-8')
            except OSError as e:
                raise InputFileError(f'cannot write {self.out_path}: {e}') from e
            logger.debug('report also written to %s', self.out_path)
        self.stream.write(text)
        self.stream.flush()
        return text
