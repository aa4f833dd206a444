"""Adapters - Concrete implementations of port interfaces."""
from __future__ import annotations
