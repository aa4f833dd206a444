"""Application layer - Use cases and orchestration."""
from __future__ import annotations
