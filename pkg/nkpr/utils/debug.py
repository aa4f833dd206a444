"""Debug and error utilities."""
from __future__ import annotations

import logging
import sys
from typing import Optional

LOGGER_NAME = 'nkpr'
LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'

logger = logging.getLogger(LOGGER_NAME)


def configure_logging(debug: bool = False) -> logging.Logger:
    """Attach a single stderr handler to the package logger.

    Safe to call more than once; the handler is replaced, not duplicated.

    Args:
        debug: Log at DEBUG level when True, WARNING otherwise

    Returns:
        The configured package logger
    """
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if debug else logging.WARNING)
    logger.propagate = False
    return logger


def debug_msg(msg: str | Exception) -> None:
    """Log a debug message, or an exception with its traceback line."""
    if isinstance(msg, Exception):
        tb = msg.__traceback__
        line = tb.tb_lineno if tb else '?'
        logger.debug('%s Line %s', msg, line)
    else:
        logger.debug(msg)


def error_msg(msg: str, e: Optional[Exception] = None) -> None:
    """Log an error message with optional exception details."""
    if e is not None:
        logger.error('%s\n\t%s', msg, e, exc_info=logger.isEnabledFor(logging.DEBUG))
    else:
        logger.error(msg)
