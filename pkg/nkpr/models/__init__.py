"""Immutable value types shared by the domain and the adapters."""
from __future__ import annotations
