"""Quantum-state semantics - platform independent.

Born probabilities, convex mixtures, distinguishability metrics, entropies,
channel action, Gibbs states and seeded measurement sampling. All functions
are pure; sampling draws from an explicit per-call generator.
"""
from __future__ import annotations

import logging
import math
from typing import Dict, Optional, Sequence

import numpy as np

from nkpr.domain import tensor_core as tc
from nkpr.domain.rng import make_rng
from nkpr.errors import DimensionMismatchError, ValidationError, WeightNormalizationError
from nkpr.models.matrix import ComplexMatrix, as_matrix
from nkpr.models.states import DensityOperator, Effect, PovmMeasurement, QuantumChannel

logger = logging.getLogger(__name__)

CLAMP_ATOL = 1e-10
WEIGHT_ATOL = 1e-10
ENTROPY_CUTOFF = 1e-12
# Channels are accepted at 1e-9 completeness; outputs are renormalized within it.
CHANNEL_TRACE_ATOL = 1e-9

PAULI_I = as_matrix([[1, 0], [0, 1]])
PAULI_X = as_matrix([[0, 1], [1, 0]])
PAULI_Y = as_matrix([[0, -1j], [1j, 0]])
PAULI_Z = as_matrix([[1, 0], [0, -1]])


def _require_same_dim(a_dim: int, b_dim: int) -> None:
    if a_dim != b_dim:
        raise DimensionMismatchError(f'dimension mismatch: {a_dim} vs {b_dim}')


def _clamp_unit(value: float, what: str) -> float:
    if -CLAMP_ATOL <= value < 0.0 or 1.0 < value <= 1.0 + CLAMP_ATOL:
        logger.debug('clamped %s %.3e into [0, 1]', what, value)
    return min(1.0, max(0.0, value))


def born_probability(rho: DensityOperator, e: Effect) -> float:
    """Probability tr(rho E) of observing effect ``e`` in state ``rho``."""
    _require_same_dim(rho.dim, e.dim)
    value = float(np.real(np.sum(np.asarray(rho.matrix) * np.asarray(e.matrix).T)))
    return _clamp_unit(value, 'Born probability')


def mixture(states: Sequence[DensityOperator], weights: Sequence[float]) -> DensityOperator:
    """Convex combination sum_j w_j rho_j.

    Raises:
        WeightNormalizationError: if weights are negative, do not sum to 1, or
            do not match the number of states
        DimensionMismatchError: if the states differ in dimension
    """
    if not states:
        raise WeightNormalizationError('a mixture needs at least one state')
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (len(states),):
        raise WeightNormalizationError(f'{w.size} weights for {len(states)} states')
    if np.any(w < 0.0) or not np.all(np.isfinite(w)):
        raise WeightNormalizationError(f'weights must be nonnegative, got {w.tolist()}')
    if abs(float(w.sum()) - 1.0) > WEIGHT_ATOL:
        raise WeightNormalizationError(f'weights sum to {float(w.sum())!r}, expected 1')
    d = states[0].dim
    for s in states[1:]:
        _require_same_dim(d, s.dim)
    total = sum(wj * np.asarray(s.matrix) for wj, s in zip(w, states))
    return DensityOperator(total)


def trace_distance(a: DensityOperator, b: DensityOperator) -> float:
    """Half the trace norm of a - b."""
    _require_same_dim(a.dim, b.dim)
    diff = np.asarray(a.matrix) - np.asarray(b.matrix)
    eigvals = np.linalg.eigvalsh((diff + diff.conj().T) / 2)
    return _clamp_unit(0.5 * float(np.sum(np.abs(eigvals))), 'trace distance')


def _clipped_sqrt(x: float) -> float:
    return math.sqrt(x) if x > 0.0 else 0.0


def fidelity(a: DensityOperator, b: DensityOperator) -> float:
    """Square-root fidelity tr sqrt(sqrt(a) b sqrt(a)).

    Eigenvalues within round-off below zero are clipped to zero.
    """
    _require_same_dim(a.dim, b.dim)
    root_a = np.asarray(tc.hermitian_function(a.matrix, _clipped_sqrt))
    inner = root_a @ np.asarray(b.matrix) @ root_a
    eigvals = np.linalg.eigvalsh((inner + inner.conj().T) / 2)
    return _clamp_unit(float(np.sum(np.sqrt(np.clip(eigvals, 0.0, None)))), 'fidelity')


def hs_distance(a: ComplexMatrix, b: ComplexMatrix) -> float:
    """Hilbert-Schmidt (Frobenius) distance ||a - b||."""
    a = np.asarray(getattr(a, 'matrix', a))
    b = np.asarray(getattr(b, 'matrix', b))
    if a.shape != b.shape:
        raise DimensionMismatchError(f'shape mismatch: {a.shape} vs {b.shape}')
    return float(np.linalg.norm(a - b))


def _spectrum(rho: DensityOperator) -> np.ndarray:
    eigvals = np.linalg.eigvalsh(np.asarray(rho.matrix))
    return np.clip(eigvals, 0.0, None)


def von_neumann_entropy(rho: DensityOperator) -> float:
    """Von Neumann entropy in bits, -sum lambda log2 lambda."""
    lam = _spectrum(rho)
    lam = lam[lam > ENTROPY_CUTOFF]
    s = float(-np.sum(lam * np.log2(lam)))
    return min(max(s, 0.0), math.log2(rho.dim))


def renyi_entropy(rho: DensityOperator, alpha: float) -> float:
    """Renyi entropy of order ``alpha`` in bits; alpha = 1 is von Neumann."""
    if alpha < 0.0:
        raise ValidationError(f'Renyi order must be nonnegative, got {alpha!r}')
    if math.isclose(alpha, 1.0):
        return von_neumann_entropy(rho)
    lam = _spectrum(rho)
    lam = lam[lam > ENTROPY_CUTOFF]
    s = float(np.log2(np.sum(lam ** alpha)) / (1.0 - alpha))
    return min(max(s, 0.0), math.log2(rho.dim))


def linear_entropy(rho: DensityOperator) -> float:
    """1 - tr(rho^2)."""
    m = np.asarray(rho.matrix)
    purity = float(np.real(np.vdot(m, m)))
    return max(0.0, 1.0 - purity)


def apply_channel(ch: QuantumChannel, rho: DensityOperator) -> DensityOperator:
    """Channel action sum_k K rho K^dagger.

    Raises:
        DimensionMismatchError: if the channel input dimension differs from rho
    """
    if ch.d_in != rho.dim:
        raise DimensionMismatchError(f'channel acts on dimension {ch.d_in}, state has {rho.dim}')
    m = np.asarray(rho.matrix)
    out = sum(k @ m @ np.conj(k).T for k in ch.kraus)
    tr = float(np.real(np.trace(out)))
    if abs(tr - 1.0) <= CHANNEL_TRACE_ATOL:
        out = out / tr
    return DensityOperator(out)


def gibbs_state(h: ComplexMatrix, beta: float) -> DensityOperator:
    """Thermal state e^{-beta H} / tr e^{-beta H}.

    Computed from the spectrum shifted by its lowest eigenvalue so large
    ``beta`` does not overflow.

    Raises:
        NotHermitianError: if ``h`` is not Hermitian
        ValidationError: if ``beta`` is negative or not finite
    """
    if not math.isfinite(beta) or beta < 0.0:
        raise ValidationError(f'inverse temperature must be finite and nonnegative, got {beta!r}')
    h = as_matrix(h)
    spectrum = tc.eigen_hermitian(h)
    lowest = float(spectrum.eigenvalues[-1])
    unnormalized = tc.hermitian_function(h, lambda lam: math.exp(-beta * (lam - lowest)), spectrum)
    z = float(np.real(np.trace(unnormalized)))
    return DensityOperator(np.asarray(unnormalized) / z)


def kms_residual(h: ComplexMatrix, beta: float, a: ComplexMatrix, b: ComplexMatrix) -> float:
    """Relative gap in the finite-dimensional KMS identity for the Gibbs state of ``h``.

    Compares tr(rho A B) with tr(rho B e^{-beta H} A e^{beta H}); zero up to
    round-off for every A, B when rho is the Gibbs state.
    """
    h = as_matrix(h)
    rho = np.asarray(gibbs_state(h, beta).matrix)
    spectrum = tc.eigen_hermitian(h)
    forward = np.asarray(tc.hermitian_function(h, lambda lam: math.exp(-beta * lam), spectrum))
    backward = np.asarray(tc.hermitian_function(h, lambda lam: math.exp(beta * lam), spectrum))
    a = np.asarray(a)
    b = np.asarray(b)
    lhs = np.trace(rho @ a @ b)
    rhs = np.trace(rho @ b @ forward @ a @ backward)
    return float(abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))


def outcome_probabilities(rho: DensityOperator, m: PovmMeasurement) -> np.ndarray:
    """Born probabilities of every POVM outcome, renormalized against round-off."""
    _require_same_dim(rho.dim, m.dim)
    p = np.array([born_probability(rho, e) for e in m.effects])
    total = float(p.sum())
    return p / total if total > 0.0 else p


def sample_measurement(rho: DensityOperator, m: PovmMeasurement, shots: int,
                       seed: int) -> Dict[str, int]:
    """Draw ``shots`` outcomes of POVM ``m`` on ``rho``.

    Args:
        rho: Measured state
        m: Measurement
        shots: Number of repetitions (0 gives an empty map)
        seed: Seed of the per-call generator

    Returns:
        Counts per outcome label, in POVM order, omitting outcomes never seen

    Raises:
        DimensionMismatchError: if the POVM and state dimensions differ
    """
    if shots < 0:
        raise ValidationError(f'shots must be nonnegative, got {shots}')
    p = outcome_probabilities(rho, m)
    if shots == 0:
        return {}
    logger.debug('sampling %d shots with seed %d', shots, seed)
    counts = make_rng(seed).multinomial(shots, p)
    return {label: int(n) for label, n in zip(m.labels, counts) if n > 0}


def random_density(d: int, rng: np.random.Generator, rank: Optional[int] = None) -> DensityOperator:
    """Random mixed state G G^dagger / tr from a d x rank Ginibre matrix."""
    k = d if rank is None else rank
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    m = g @ g.conj().T
    return DensityOperator(m / np.real(np.trace(m)))


def bloch_vector(rho: DensityOperator) -> np.ndarray:
    """Qubit Bloch coordinates (<X>, <Y>, <Z>)."""
    _require_same_dim(rho.dim, 2)
    m = np.asarray(rho.matrix)
    return np.array([float(np.real(np.trace(m @ p))) for p in (PAULI_X, PAULI_Y, PAULI_Z)])


def from_bloch(r: Sequence[float]) -> DensityOperator:
    """Qubit state (I + r . sigma) / 2.

    Raises:
        ValidationError: if |r| exceeds 1 beyond round-off
    """
    x, y, z = (float(c) for c in r)
    if math.sqrt(x * x + y * y + z * z) > 1.0 + CLAMP_ATOL:
        raise ValidationError(f'Bloch vector {list(r)} lies outside the unit ball')
    return DensityOperator((np.asarray(PAULI_I) + x * PAULI_X + y * PAULI_Y + z * PAULI_Z) / 2)
