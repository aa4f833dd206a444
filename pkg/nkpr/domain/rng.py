"""Seeded random generators.

Every random draw in nkpr goes through an explicit generator built here;
nothing touches numpy's global RNG state.
"""
from __future__ import annotations

import numpy as np

_SEED_MODULUS = 2 ** 64


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based (Philox) generator for ``seed``; negative seeds wrap modulo 2**64."""
    return np.random.Generator(np.random.Philox(int(seed) % _SEED_MODULUS))


def derive_seed(seed: int, index: int) -> int:
    """Per-task seed for parallel work: seed + task index."""
    return (int(seed) + int(index)) % _SEED_MODULUS
