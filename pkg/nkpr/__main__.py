"""Entry point for the nkpr command-line tool.

This module serves as the main entry point when running the application
as a Python module (python -m nkpr).
"""
from __future__ import annotations

import sys

from nkpr.cli import main

if __name__ == '__main__':
    sys.exit(main())
