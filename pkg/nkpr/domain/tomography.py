"""State reconstruction from measurement data - platform independent.

Linear inversion of expectation values over an informationally complete
observable set, followed by a clip-and-renormalize repair that returns a
physical density operator.
"""
from __future__ import annotations

import itertools
import logging
from typing import Dict, Mapping, Optional

import numpy as np
import scipy.linalg

from nkpr.domain import tensor_core as tc
from nkpr.domain.quantum_objects import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z, sample_measurement
from nkpr.domain.rng import derive_seed
from nkpr.errors import DimensionMismatchError, RankDeficientBasisError, ValidationError, ZeroTraceError
from nkpr.models.learning import TomographyResult
from nkpr.models.matrix import ComplexMatrix, as_matrix
from nkpr.models.states import DensityOperator, PovmMeasurement

logger = logging.getLogger(__name__)

REPAIR_HERMITIAN_RTOL = 1e-6
RANK_RTOL = 1e-10

_PAULIS = {'I': PAULI_I, 'X': PAULI_X, 'Y': PAULI_Y, 'Z': PAULI_Z}


def pauli_observables(n_qubits: int) -> Dict[str, ComplexMatrix]:
    """All non-identity Pauli strings on ``n_qubits`` qubits, e.g. 'X', 'ZY'."""
    observables = {}
    for letters in itertools.product('IXYZ', repeat=n_qubits):
        name = ''.join(letters)
        if set(name) == {'I'}:
            continue
        observables[name] = tc.tensor_product_all(_PAULIS[c] for c in letters)
    return observables


def gell_mann_observables(d: int) -> Dict[str, ComplexMatrix]:
    """The d^2 - 1 generalized Gell-Mann matrices (traceless Hermitian basis)."""
    observables = {}
    for j in range(d):
        for k in range(j + 1, d):
            sym = np.zeros((d, d), dtype=np.complex128)
            sym[j, k] = sym[k, j] = 1.0
            observables[f'S{j}{k}'] = as_matrix(sym)
            anti = np.zeros((d, d), dtype=np.complex128)
            anti[j, k], anti[k, j] = -1j, 1j
            observables[f'A{j}{k}'] = as_matrix(anti)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        observables[f'D{l}'] = as_matrix(np.diag(diag * np.sqrt(2.0 / (l * (l + 1)))))
    return observables


def standard_observables(d: int) -> Dict[str, ComplexMatrix]:
    """Pauli strings when d is a power of two, Gell-Mann matrices otherwise."""
    n_qubits = d.bit_length() - 1
    if d >= 2 and 2 ** n_qubits == d:
        return pauli_observables(n_qubits)
    return gell_mann_observables(d)


def project_to_density(raw: ComplexMatrix) -> DensityOperator:
    """Nearest-by-clipping physical state: negative eigenvalues set to 0, trace renormalized.

    Raises:
        NotHermitianError: if ``raw`` is farther than 1e-6 from Hermitian
        ZeroTraceError: if nothing positive survives the clipping
    """
    m = as_matrix(raw)
    sym = tc.hermitian_part(m, REPAIR_HERMITIAN_RTOL)
    spectrum = tc.eigen_hermitian(sym)
    clipped = np.clip(spectrum.eigenvalues, 0.0, None)
    total = float(clipped.sum())
    if total <= 0.0:
        raise ZeroTraceError('no positive eigenvalue left after clipping')
    if np.any(spectrum.eigenvalues < 0.0):
        logger.debug('clipped eigenvalues %s', spectrum.eigenvalues[spectrum.eigenvalues < 0.0])
    v = np.asarray(spectrum.eigenvectors)
    return DensityOperator((v * (clipped / total)) @ v.conj().T)


def tomography_invert(expectations: Mapping[str, float], basis: Mapping[str, ComplexMatrix],
                      shots_used: int = 0) -> TomographyResult:
    """Linear-inversion estimate from expectation values.

    Solves tr(rho B_k) = <B_k> together with tr(rho) = 1 in the least-squares
    sense, then repairs the result with project_to_density.

    Args:
        expectations: Estimated mean per observable/effect id
        basis: The observables/effects, keyed like ``expectations``
        shots_used: Recorded on the result

    Raises:
        ValidationError: if an expectation has no matching basis element
        RankDeficientBasisError: if identity plus the basis do not span the
            Hermitian matrices
    """
    missing = set(expectations) - set(basis)
    if missing:
        raise ValidationError(f'no basis element for expectation ids {sorted(missing)}')
    names = [k for k in basis if k in expectations]
    if not names:
        raise RankDeficientBasisError('no expectation values given')
    mats = [np.asarray(basis[k]) for k in names]
    d = mats[0].shape[0]
    if any(b.shape != (d, d) for b in mats):
        raise DimensionMismatchError('basis elements must be square and share one dimension')

    # Row k maps vec(rho) to tr(rho B_k) = sum_ij rho_ij (B_k)_ji.
    rows = [np.eye(d).T.reshape(-1)] + [b.T.reshape(-1) for b in mats]
    values = [1.0] + [float(expectations[k]) for k in names]
    a = np.array(rows, dtype=np.complex128)
    rank = np.linalg.matrix_rank(a, tol=RANK_RTOL * max(1.0, float(np.linalg.norm(a, 2))))
    if rank < d * d:
        raise RankDeficientBasisError(f'basis spans rank {rank}, need {d * d}')
    x, *_ = scipy.linalg.lstsq(a, np.array(values, dtype=np.complex128))
    raw = as_matrix(x.reshape(d, d))
    return TomographyResult(estimate=project_to_density(raw), raw=raw, shots_used=shots_used)


def estimate_expectations(rho: DensityOperator, basis: Mapping[str, ComplexMatrix], shots: int,
                          seed: int) -> Dict[str, float]:
    """Monte Carlo means of each observable from its eigenbasis measurement.

    Each observable is measured ``shots`` times with seed ``seed + index``.

    Raises:
        ValidationError: if ``shots`` is not positive
        DimensionMismatchError: if an observable does not match ``rho``
    """
    if shots <= 0:
        raise ValidationError(f'shots must be positive, got {shots}')
    means = {}
    for index, (name, observable) in enumerate(basis.items()):
        spectrum = tc.eigen_hermitian(as_matrix(observable))
        if spectrum.dim != rho.dim:
            raise DimensionMismatchError(f'observable {name!r} has dimension {spectrum.dim}, state has {rho.dim}')
        povm = PovmMeasurement.from_basis(spectrum.eigenvectors)
        counts = sample_measurement(rho, povm, shots, derive_seed(seed, index))
        total = sum(n * spectrum.eigenvalues[int(label)] for label, n in counts.items())
        means[name] = float(total) / shots
    return means


def exact_expectations(rho: DensityOperator, basis: Mapping[str, ComplexMatrix]) -> Dict[str, float]:
    """Noise-free expectation values tr(rho B)."""
    m = np.asarray(rho.matrix)
    return {name: float(np.real(np.trace(m @ np.asarray(b)))) for name, b in basis.items()}


def run_tomography(true_state: DensityOperator, shots: int, seed: int,
                   basis: Optional[Mapping[str, ComplexMatrix]] = None) -> TomographyResult:
    """Simulate finite-shot tomography of a known state end to end."""
    basis = standard_observables(true_state.dim) if basis is None else basis
    means = estimate_expectations(true_state, basis, shots, seed)
    return tomography_invert(means, basis, shots_used=shots * len(basis))
