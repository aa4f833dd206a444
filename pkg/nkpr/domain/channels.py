"""Built-in quantum channel vocabulary.

Each factory returns a validated QuantumChannel in Kraus form. Learning
scenarios name channels by string; build_channel maps a ChannelSpec onto
these factories.
"""
from __future__ import annotations

import logging
import math
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from nkpr.domain.quantum_objects import PAULI_X, PAULI_Z
from nkpr.errors import ChannelSpecError, DomainError
from nkpr.models.learning import ChannelSpec
from nkpr.models.states import QuantumChannel

logger = logging.getLogger(__name__)


def _probability(value: Any, name: str) -> float:
    try:
        p = float(value)
    except (TypeError, ValueError) as e:
        raise ChannelSpecError(f'{name} must be a number, got {value!r}') from e
    if not 0.0 <= p <= 1.0:
        raise ChannelSpecError(f'{name} must lie in [0, 1], got {p!r}')
    return p


def _require_qubit(name: str, d: int) -> None:
    if d != 2:
        raise ChannelSpecError(f'channel {name!r} is defined for qubits only, state has dimension {d}')


def identity_channel(d: int) -> QuantumChannel:
    return QuantumChannel((np.eye(d),))


def unitary_channel(u: Any) -> QuantumChannel:
    """Conjugation by a unitary; a non-unitary matrix fails trace preservation."""
    return QuantumChannel((np.asarray(u, dtype=np.complex128),))


def weyl_operators(d: int) -> List[np.ndarray]:
    """Generalized Pauli (Weyl) operators X^a Z^b, with (0, 0) first."""
    omega = np.exp(2j * np.pi / d)
    shift = np.roll(np.eye(d), 1, axis=0)
    clock = np.diag(omega ** np.arange(d))
    return [np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
            for a in range(d) for b in range(d)]


def depolarizing_channel(p: float, d: int = 2) -> QuantumChannel:
    """rho -> (1 - p) rho + p I/d, in Weyl-operator Kraus form."""
    p = _probability(p, 'p')
    ops = weyl_operators(d)
    n = d * d
    kraus = [math.sqrt(1.0 - p * (n - 1) / n) * ops[0]]
    kraus += [math.sqrt(p / n) * w for w in ops[1:]]
    return QuantumChannel(tuple(kraus))


def bit_flip_channel(p: float) -> QuantumChannel:
    p = _probability(p, 'p')
    return QuantumChannel((math.sqrt(1.0 - p) * np.eye(2), math.sqrt(p) * np.asarray(PAULI_X)))


def phase_flip_channel(p: float) -> QuantumChannel:
    p = _probability(p, 'p')
    return QuantumChannel((math.sqrt(1.0 - p) * np.eye(2), math.sqrt(p) * np.asarray(PAULI_Z)))


def amplitude_damping_channel(gamma: float) -> QuantumChannel:
    """Decay |1> -> |0> with probability gamma."""
    gamma = _probability(gamma, 'gamma')
    k0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - gamma)]])
    k1 = np.array([[0.0, math.sqrt(gamma)], [0.0, 0.0]])
    return QuantumChannel((k0, k1))


def dephasing_channel(d: int, basis: Optional[Any] = None) -> QuantumChannel:
    """Non-selective projective measurement in ``basis`` (columns; default computational)."""
    u = np.eye(d, dtype=np.complex128) if basis is None else np.asarray(basis, dtype=np.complex128)
    if u.shape != (d, d):
        raise ChannelSpecError(f'dephasing basis must be {d}x{d}, got {u.shape}')
    return QuantumChannel(tuple(np.outer(u[:, i], u[:, i].conj()) for i in range(d)))


def kraus_channel(operators: Sequence[Any]) -> QuantumChannel:
    return QuantumChannel(tuple(np.asarray(k, dtype=np.complex128) for k in operators))


def _param(spec: ChannelSpec, key: str, default: Any = None) -> Any:
    if key in spec.params:
        return spec.params[key]
    if default is None:
        raise ChannelSpecError(f'channel {spec.name!r} needs parameter {key!r}')
    return default


def _build_depolarizing(spec: ChannelSpec, d: int) -> QuantumChannel:
    return depolarizing_channel(_param(spec, 'p'), d)


def _build_bit_flip(spec: ChannelSpec, d: int) -> QuantumChannel:
    _require_qubit(spec.name, d)
    return bit_flip_channel(_param(spec, 'p'))


def _build_phase_flip(spec: ChannelSpec, d: int) -> QuantumChannel:
    _require_qubit(spec.name, d)
    return phase_flip_channel(_param(spec, 'p'))


def _build_amplitude_damping(spec: ChannelSpec, d: int) -> QuantumChannel:
    _require_qubit(spec.name, d)
    return amplitude_damping_channel(_param(spec, 'gamma'))


_BUILDERS: Dict[str, Callable[[ChannelSpec, int], QuantumChannel]] = {
    'identity': lambda spec, d: identity_channel(d),
    'unitary': lambda spec, d: unitary_channel(_param(spec, 'matrix')),
    'depolarizing': _build_depolarizing,
    'bit-flip': _build_bit_flip,
    'phase-flip': _build_phase_flip,
    'amplitude-damping': _build_amplitude_damping,
    'measurement-dephasing': lambda spec, d: dephasing_channel(d, spec.params.get('basis')),
    'kraus': lambda spec, d: kraus_channel(_param(spec, 'operators')),
}

CHANNEL_NAMES = tuple(_BUILDERS)


def build_channel(spec: ChannelSpec, d: int) -> QuantumChannel:
    """Instantiate a named channel for states of dimension ``d``.

    Raises:
        ChannelSpecError: for unknown names, bad parameters, or a channel
            whose input dimension is not ``d``
    """
    builder = _BUILDERS.get(spec.name)
    if builder is None:
        raise ChannelSpecError(f'unknown channel {spec.name!r}; expected one of {", ".join(CHANNEL_NAMES)}')
    try:
        channel = builder(spec, d)
    except ChannelSpecError:
        raise
    except (DomainError, ValueError, TypeError) as e:
        raise ChannelSpecError(f'cannot instantiate channel {spec.name!r}: {e}') from e
    if channel.d_in != d or channel.d_out != d:
        raise ChannelSpecError(
            f'channel {spec.name!r} maps {channel.d_in} -> {channel.d_out}, state has dimension {d}')
    logger.debug('built channel %s with %d Kraus operators', spec.name, len(channel.kraus))
    return channel
