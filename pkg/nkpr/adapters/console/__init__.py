"""Console adapters - Report output on standard streams."""
from __future__ import annotations
