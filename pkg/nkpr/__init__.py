"""nkpr - Pattern recognition over classical and quantum probabilistic models."""
from __future__ import annotations

__version__ = '0.1'
