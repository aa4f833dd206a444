"""Dense complex linear algebra - platform independent.

This module contains the matrix substrate every quantum object is built on:
Kronecker products, partial traces, Hermitian spectral decomposition and
functions of Hermitian matrices. Every function is pure and returns new
read-only arrays.
"""
from __future__ import annotations

import logging
from functools import reduce
from typing import Callable, Iterable, List, Optional, Sequence

import numpy as np
import scipy.linalg

from nkpr.errors import DimensionMismatchError, FunctionDomainError, NotHermitianError
from nkpr.models.matrix import ComplexMatrix, HermitianSpectrum, as_matrix

logger = logging.getLogger(__name__)

HERMITIAN_RTOL = 1e-10
# Relative gap under which two eigenvalues count as degenerate for ordering.
DEGENERACY_RTOL = 1e-12
PHASE_ATOL = 1e-12


def identity(d: int) -> ComplexMatrix:
    """Return the d x d identity."""
    return as_matrix(np.eye(d))


def frobenius_norm(m: ComplexMatrix) -> float:
    return float(np.linalg.norm(m))


def dagger(m: ComplexMatrix) -> ComplexMatrix:
    return as_matrix(np.conj(m).T)


def require_square(m: ComplexMatrix, what: str = 'matrix') -> int:
    """Return the dimension of a square matrix.

    Raises:
        DimensionMismatchError: if ``m`` is not square
    """
    rows, cols = m.shape
    if rows != cols:
        raise DimensionMismatchError(f'{what} must be square, got {rows}x{cols}')
    return rows


def require_same_shape(a: ComplexMatrix, b: ComplexMatrix) -> None:
    if a.shape != b.shape:
        raise DimensionMismatchError(f'shape mismatch: {a.shape} vs {b.shape}')


def tensor_product(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product a (x) b."""
    return as_matrix(np.kron(a, b))


def tensor_product_all(factors: Iterable[ComplexMatrix]) -> ComplexMatrix:
    """Kronecker product of a nonempty sequence of factors, left to right."""
    return reduce(tensor_product, factors)


def partial_trace(m: ComplexMatrix, dims: Sequence[int], keep: Iterable[int]) -> ComplexMatrix:
    """Trace out every factor of a tensor-product matrix except ``keep``.

    Kept factors stay in their original order. An empty ``keep`` traces out
    everything and yields the 1x1 matrix holding the scalar trace.

    Args:
        m: Square matrix acting on the product space
        dims: Dimension of each tensor factor
        keep: Indices of the factors to keep

    Returns:
        The reduced matrix over the kept factors

    Raises:
        DimensionMismatchError: if the factor dimensions do not multiply to
            the size of ``m`` or a kept index is out of range
    """
    d = require_square(m)
    dims = [int(x) for x in dims]
    if not dims or any(x < 1 for x in dims):
        raise DimensionMismatchError(f'factor dimensions must be positive, got {dims}')
    if int(np.prod(dims)) != d:
        raise DimensionMismatchError(f'factor dimensions {dims} do not multiply to {d}')
    keep_set = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep_set):
        raise DimensionMismatchError(f'kept factors {keep_set} out of range for {len(dims)} factors')

    n = len(dims)
    tensor = np.asarray(m).reshape(dims + dims)
    # Contract the highest index first so lower axis numbers stay valid.
    for i in sorted(set(range(n)) - set(keep_set), reverse=True):
        tensor = np.trace(tensor, axis1=i, axis2=i + n)
        n -= 1
    kept_dim = int(np.prod([dims[k] for k in keep_set])) if keep_set else 1
    return as_matrix(np.asarray(tensor).reshape(kept_dim, kept_dim))


def hermitian_part(m: ComplexMatrix, rtol: float = HERMITIAN_RTOL) -> ComplexMatrix:
    """Symmetrize a matrix that is Hermitian up to round-off.

    Args:
        m: Square matrix
        rtol: Allowed Frobenius distance to (m + m^dagger)/2, relative to its norm

    Returns:
        (m + m^dagger) / 2

    Raises:
        NotHermitianError: if ``m`` is farther than ``rtol`` from Hermitian
    """
    require_square(m)
    sym = (m + np.conj(m).T) / 2
    residual = float(np.linalg.norm(m - sym))
    scale = float(np.linalg.norm(sym))
    if residual > rtol * scale:
        raise NotHermitianError(
            f'matrix is not Hermitian (relative residual {residual / max(scale, 1e-300):.3e})')
    if residual > 0.0:
        logger.debug('symmetrized matrix with residual %.3e', residual)
    return as_matrix(sym)


def partial_transpose(m: ComplexMatrix, dims: Sequence[int], factor: int) -> ComplexMatrix:
    """Transpose one tensor factor of a product-space matrix.

    Raises:
        DimensionMismatchError: if the factor dimensions do not multiply to
            the size of ``m`` or ``factor`` is out of range
    """
    d = require_square(m)
    dims = [int(x) for x in dims]
    if not dims or any(x < 1 for x in dims) or int(np.prod(dims)) != d:
        raise DimensionMismatchError(f'factor dimensions {dims} do not match size {d}')
    if not 0 <= factor < len(dims):
        raise DimensionMismatchError(f'factor {factor} out of range for {len(dims)} factors')
    n = len(dims)
    tensor = np.asarray(m).reshape(dims + dims)
    return as_matrix(np.swapaxes(tensor, factor, factor + n).reshape(d, d))


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate each column so its first nonzero component is real-positive."""
    out = v.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        nonzero = np.flatnonzero(np.abs(col) > PHASE_ATOL)
        if nonzero.size:
            lead = col[nonzero[0]]
            out[:, j] = col * (np.abs(lead) / lead)
    return out


def _column_key(col: np.ndarray) -> List[float]:
    return [x for z in col for x in (round(z.real, 12), round(z.imag, 12))]


def eigen_hermitian(m: ComplexMatrix) -> HermitianSpectrum:
    """Spectral decomposition of a Hermitian matrix.

    Eigenvalues come sorted descending. Within a degenerate group the
    phase-fixed eigenvectors are ordered lexicographically, largest first,
    so identical inputs always give identical outputs.

    Raises:
        NotHermitianError: if ``m`` is not Hermitian within tolerance
    """
    sym = hermitian_part(m)
    values, vectors = scipy.linalg.eigh(np.asarray(sym))
    order = np.argsort(-values, kind='stable')
    values = values[order]
    vectors = _fix_phase(vectors[:, order])

    # Order columns inside runs of degenerate eigenvalues.
    cols = list(range(values.shape[0]))
    start = 0
    while start < len(cols):
        stop = start + 1
        scale = max(1.0, abs(values[start]))
        while stop < len(cols) and abs(values[stop] - values[start]) <= DEGENERACY_RTOL * scale:
            stop += 1
        if stop - start > 1:
            run = sorted(range(start, stop), key=lambda j: _column_key(vectors[:, j]), reverse=True)
            cols[start:stop] = run
        start = stop
    vectors = vectors[:, cols]
    values = values[cols]

    eigvals = np.array(values, dtype=np.float64)
    eigvals.setflags(write=False)
    return HermitianSpectrum(eigenvalues=eigvals, eigenvectors=as_matrix(vectors))


def hermitian_function(m: ComplexMatrix, f: Callable[[float], float],
                       spectrum: Optional[HermitianSpectrum] = None) -> ComplexMatrix:
    """Apply a real function to a Hermitian matrix through its spectrum.

    Args:
        m: Hermitian matrix
        f: Real-to-real map evaluated on each eigenvalue
        spectrum: Precomputed spectrum of ``m``, to skip a second decomposition

    Returns:
        V diag(f(lambda)) V^dagger

    Raises:
        NotHermitianError: if ``m`` is not Hermitian
        FunctionDomainError: if ``f`` fails or is not finite at an eigenvalue
    """
    spec = spectrum if spectrum is not None else eigen_hermitian(m)
    mapped = []
    with np.errstate(all='ignore'):
        for lam in spec.eigenvalues:
            try:
                value = f(float(lam))
            except (ValueError, ZeroDivisionError, OverflowError) as e:
                raise FunctionDomainError(f'function undefined at eigenvalue {lam!r}: {e}') from e
            if isinstance(value, complex) or not np.isfinite(value):
                raise FunctionDomainError(f'function undefined at eigenvalue {lam!r}')
            mapped.append(float(value))
    v = np.asarray(spec.eigenvectors)
    return as_matrix((v * np.array(mapped)) @ v.conj().T)


def frobenius_inner(a: ComplexMatrix, b: ComplexMatrix) -> complex:
    """Hilbert-Schmidt inner product tr(a^dagger b).

    Raises:
        DimensionMismatchError: if the shapes differ
    """
    require_same_shape(a, b)
    return complex(np.vdot(a, b))


def random_unitary(d: int, rng: np.random.Generator) -> ComplexMatrix:
    """Haar-distributed unitary from the QR decomposition of a Ginibre matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = scipy.linalg.qr(z)
    diag = np.diag(r)
    phases = np.where(np.abs(diag) > 0, diag / np.abs(diag), 1.0)
    return as_matrix(q * phases)


def random_hermitian(d: int, rng: np.random.Generator) -> ComplexMatrix:
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return as_matrix((z + z.conj().T) / 2)
