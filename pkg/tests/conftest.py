"""Shared fixtures: canonical qubit states and seeded generators."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Callable, Dict

import numpy as np
import pytest

from nkpr.adapters.storage.json_codec import encode_density
from nkpr.domain.rng import make_rng
from nkpr.models.states import DensityOperator

SQRT_HALF = 1 / np.sqrt(2)


@pytest.fixture
def ket0() -> DensityOperator:
    return DensityOperator.basis(0, 2)


@pytest.fixture
def ket1() -> DensityOperator:
    return DensityOperator.basis(1, 2)


@pytest.fixture
def plus() -> DensityOperator:
    return DensityOperator.from_vector([SQRT_HALF, SQRT_HALF])


@pytest.fixture
def minus() -> DensityOperator:
    return DensityOperator.from_vector([SQRT_HALF, -SQRT_HALF])


@pytest.fixture
def mixed() -> DensityOperator:
    return DensityOperator.maximally_mixed(2)


@pytest.fixture
def bell() -> DensityOperator:
    return DensityOperator.from_vector([SQRT_HALF, 0, 0, SQRT_HALF])


@pytest.fixture
def rng() -> np.random.Generator:
    return make_rng(1234)


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], Path]:
    """Write a JSON document into the test's temporary directory."""
    def write(name: str, document: Any) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding='utf-8')
        return path
    return write


@pytest.fixture
def density_doc() -> Callable[[DensityOperator], Dict[str, Any]]:
    return encode_density
