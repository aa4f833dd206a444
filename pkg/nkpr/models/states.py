"""Quantum state and measurement models.

Every type validates its invariants on construction and stores a read-only
(symmetrized, where the invariant is Hermiticity) matrix, so a value that
exists is a valid value.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence, Tuple

import numpy as np

from nkpr.domain import tensor_core as tc
from nkpr.errors import DimensionMismatchError, NotHermitianError, ValidationError
from nkpr.models.matrix import ComplexMatrix, as_matrix, as_vector

TRACE_ATOL = 1e-10
EIGEN_ATOL = 1e-10
IDEMPOTENT_ATOL = 1e-9
COMPLETENESS_ATOL = 1e-9


def _hermitian(data: Any, what: str) -> ComplexMatrix:
    m = as_matrix(data)
    tc.require_square(m, what)
    try:
        return tc.hermitian_part(m)
    except NotHermitianError as e:
        raise ValidationError(f'{what} is not Hermitian: {e}') from e


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite matrix.

    Attributes:
        matrix: The (symmetrized) density matrix
        improper: True when the state is a reduction of an entangled global
            state, i.e. an improper mixture that admits no ignorance reading
    """
    matrix: ComplexMatrix
    improper: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        m = _hermitian(self.matrix, 'density operator')
        tr = float(np.real(np.trace(m)))
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValidationError(f'density operator trace is {tr!r}, expected 1')
        lowest = float(np.linalg.eigvalsh(np.asarray(m))[0])
        if lowest < -EIGEN_ATOL:
            raise ValidationError(f'density operator has negative eigenvalue {lowest!r}')
        object.__setattr__(self, 'matrix', m)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @classmethod
    def from_vector(cls, psi: Any) -> DensityOperator:
        """Pure state |psi><psi| from a (not necessarily normalized) vector."""
        v = np.asarray(as_vector(psi))
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise ValidationError('state vector has zero norm')
        v = v / norm
        return cls(np.outer(v, v.conj()))

    @classmethod
    def basis(cls, index: int, d: int) -> DensityOperator:
        """Computational basis projector |index><index| in dimension d."""
        v = np.zeros(d, dtype=np.complex128)
        v[index] = 1.0
        return cls.from_vector(v)

    @classmethod
    def maximally_mixed(cls, d: int) -> DensityOperator:
        return cls(np.eye(d) / d)


@dataclass(frozen=True, eq=False)
class Effect:
    """Hermitian matrix E with 0 <= E <= I (a generalized measurement outcome)."""
    matrix: ComplexMatrix

    def __post_init__(self) -> None:
        m = _hermitian(self.matrix, type(self).__name__.lower())
        eigvals = np.linalg.eigvalsh(np.asarray(m))
        if eigvals[0] < -EIGEN_ATOL or eigvals[-1] > 1.0 + EIGEN_ATOL:
            raise ValidationError(
                f'effect eigenvalues must lie in [0, 1], got [{eigvals[0]!r}, {eigvals[-1]!r}]')
        object.__setattr__(self, 'matrix', m)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])


@dataclass(frozen=True, eq=False)
class Projection(Effect):
    """Orthogonal projector: P^dagger = P and P^2 = P."""

    def __post_init__(self) -> None:
        super().__post_init__()
        m = np.asarray(self.matrix)
        residual = float(np.linalg.norm(m @ m - m))
        if residual > IDEMPOTENT_ATOL:
            raise ValidationError(f'projection is not idempotent (residual {residual:.3e})')

    @property
    def rank(self) -> int:
        return int(round(float(np.real(np.trace(self.matrix)))))

    @classmethod
    def onto(cls, vectors: Any) -> Projection:
        """Projector onto the span of the given (orthonormal) column vectors."""
        v = np.asarray(vectors, dtype=np.complex128)
        if v.ndim == 1:
            v = v.reshape(-1, 1) / np.linalg.norm(v)
        return cls(v @ v.conj().T)

    @classmethod
    def zero(cls, d: int) -> Projection:
        return cls(np.zeros((d, d)))

    @classmethod
    def identity(cls, d: int) -> Projection:
        return cls(np.eye(d))


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """Completely positive trace-preserving map in Kraus form.

    Attributes:
        kraus: Kraus operators, all d_out x d_in, with sum K^dagger K = I
    """
    kraus: Tuple[ComplexMatrix, ...]

    def __post_init__(self) -> None:
        ops = tuple(as_matrix(k) for k in self.kraus)
        if not ops:
            raise ValidationError('a channel needs at least one Kraus operator')
        shape = ops[0].shape
        if any(k.shape != shape for k in ops):
            raise DimensionMismatchError('all Kraus operators must share one shape')
        total = sum(np.conj(k).T @ k for k in ops)
        residual = float(np.linalg.norm(total - np.eye(shape[1])))
        if residual > COMPLETENESS_ATOL:
            raise ValidationError(f'channel is not trace preserving (residual {residual:.3e})')
        object.__setattr__(self, 'kraus', ops)

    @property
    def d_in(self) -> int:
        return int(self.kraus[0].shape[1])

    @property
    def d_out(self) -> int:
        return int(self.kraus[0].shape[0])

    def is_unital(self, atol: float = COMPLETENESS_ATOL) -> bool:
        """True if the channel maps the identity to the identity."""
        if self.d_in != self.d_out:
            return False
        total = sum(k @ np.conj(k).T for k in self.kraus)
        return float(np.linalg.norm(total - np.eye(self.d_out))) <= atol


@dataclass(frozen=True, eq=False)
class PovmMeasurement:
    """Effects summing to the identity, each with an outcome label."""
    effects: Tuple[Effect, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        effects = tuple(e if isinstance(e, Effect) else Effect(e) for e in self.effects)
        if not effects:
            raise ValidationError('a POVM needs at least one effect')
        labels = tuple(str(x) for x in self.labels) or tuple(str(i) for i in range(len(effects)))
        if len(labels) != len(effects):
            raise ValidationError(f'{len(labels)} labels for {len(effects)} effects')
        if len(set(labels)) != len(labels):
            raise ValidationError('POVM labels must be unique')
        d = effects[0].dim
        if any(e.dim != d for e in effects):
            raise DimensionMismatchError('all POVM effects must share one dimension')
        total = sum(np.asarray(e.matrix) for e in effects)
        residual = float(np.linalg.norm(total - np.eye(d)))
        if residual > COMPLETENESS_ATOL:
            raise ValidationError(f'POVM effects do not sum to identity (residual {residual:.3e})')
        object.__setattr__(self, 'effects', effects)
        object.__setattr__(self, 'labels', labels)

    @property
    def dim(self) -> int:
        return self.effects[0].dim

    @classmethod
    def computational(cls, d: int) -> PovmMeasurement:
        """Projective measurement in the computational basis, labels '0'..'d-1'."""
        return cls(tuple(Projection(np.diag(np.eye(d)[i])) for i in range(d)))

    @classmethod
    def from_basis(cls, basis: Any, labels: Sequence[str] = ()) -> PovmMeasurement:
        """Projective measurement onto the columns of a unitary matrix."""
        u = np.asarray(basis, dtype=np.complex128)
        effects = tuple(Projection.onto(u[:, i]) for i in range(u.shape[1]))
        return cls(effects, tuple(labels))
