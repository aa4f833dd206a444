"""Domain layer - Core linear algebra, quantum semantics and recognition logic."""
from __future__ import annotations
