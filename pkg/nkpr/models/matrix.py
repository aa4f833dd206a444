"""Dense complex matrices and Hermitian spectra."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray

from nkpr.errors import ValidationError

logger = logging.getLogger(__name__)

# Row-major complex128 ndarray, made read-only on construction.
ComplexMatrix = NDArray[np.complex128]
RealVector = NDArray[np.float64]


def as_matrix(data: Any) -> ComplexMatrix:
    """Build a validated, read-only complex matrix.

    Args:
        data: Anything numpy can turn into a 2-D array (nested lists,
            ndarrays, scalars are not accepted)

    Returns:
        A read-only complex128 copy of ``data``

    Raises:
        ValidationError: if the input is not 2-D, is empty, or holds NaN/Inf
    """
    try:
        arr = np.array(data, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise ValidationError(f'cannot interpret value as a complex matrix: {e}') from e
    if arr.ndim != 2:
        raise ValidationError(f'expected a 2-D matrix, got {arr.ndim} dimension(s)')
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValidationError(f'matrix must have positive dimensions, got {arr.shape}')
    if not np.all(np.isfinite(arr)):
        raise ValidationError('matrix entries must be finite')
    arr.setflags(write=False)
    return arr


def as_vector(data: Any) -> NDArray[np.complex128]:
    """Build a validated, read-only complex state vector."""
    arr = np.array(data, dtype=np.complex128).reshape(-1)
    if arr.size < 1 or not np.all(np.isfinite(arr)):
        raise ValidationError('state vector must be nonempty and finite')
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class HermitianSpectrum:
    """Eigen-decomposition of a Hermitian matrix.

    Attributes:
        eigenvalues: Real eigenvalues sorted descending
        eigenvectors: Unitary matrix whose columns are the matching eigenvectors,
            each phase-fixed so its first nonzero component is real-positive
    """
    eigenvalues: RealVector
    eigenvectors: ComplexMatrix

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def reassemble(self) -> ComplexMatrix:
        """Return V diag(lambda) V^dagger."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T
