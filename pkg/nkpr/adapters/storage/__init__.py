"""Storage adapters - File-based persistence implementations."""
from __future__ import annotations
