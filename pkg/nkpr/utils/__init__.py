"""Utility functions and helpers."""
from __future__ import annotations
