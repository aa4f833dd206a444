"""Learning-process and state-reconstruction models."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Tuple

from nkpr.errors import ValidationError
from nkpr.models.matrix import ComplexMatrix
from nkpr.models.states import DensityOperator

ENTROPY_MEASURES = ('von_neumann', 'renyi2', 'linear')


@dataclass(frozen=True)
class ChannelSpec:
    """A channel named from the built-in vocabulary plus its parameters.

    Attributes:
        name: One of identity, unitary, depolarizing, bit-flip, phase-flip,
            amplitude-damping, measurement-dephasing, kraus
        params: Parameter map; matrix-valued parameters are already decoded
    """
    name: str
    params: Mapping[str, Any] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class LearningStep:
    time: float
    channel: ChannelSpec


@dataclass(frozen=True, eq=False)
class LearningScenario:
    """Initial global state and the timed channel sequence acting on it.

    Attributes:
        initial: Global state at time zero
        steps: Channel applications, strictly increasing in time
        dims: Optional tensor factor dimensions of the global state; when set,
            every step also reports the entropy of each factor's reduced state
        entropy: Entropic measure used for the trace and the success test
    """
    initial: DensityOperator
    steps: Tuple[LearningStep, ...] = ()
    dims: Optional[Tuple[int, ...]] = None
    entropy: str = 'von_neumann'

    def __post_init__(self) -> None:
        steps = tuple(self.steps)
        times = [s.time for s in steps]
        if any(later <= earlier for earlier, later in zip(times, times[1:])):
            raise ValidationError(f'step times must be strictly increasing, got {times}')
        if self.entropy not in ENTROPY_MEASURES:
            raise ValidationError(f'unknown entropy measure {self.entropy!r}')
        object.__setattr__(self, 'steps', steps)
        if self.dims is not None:
            object.__setattr__(self, 'dims', tuple(int(d) for d in self.dims))


@dataclass(frozen=True, eq=False)
class LearningTrace:
    """Succession of global states produced by a learning scenario.

    Attributes:
        times: 0 followed by the step times
        states: rho(0), Lambda(t1) rho(0), ...
        entropies: Entropy of each state in the scenario's measure
        success: True iff the final entropy is strictly below the initial one
        marginal_entropies: Per state, the entropy of each tensor factor
            (empty unless the scenario declares dims)
    """
    times: Tuple[float, ...]
    states: Tuple[DensityOperator, ...]
    entropies: Tuple[float, ...]
    success: bool
    marginal_entropies: Tuple[Tuple[float, ...], ...] = ()

    def __len__(self) -> int:
        return len(self.states)


@dataclass(frozen=True, eq=False)
class TomographyResult:
    """Reconstructed state.

    Attributes:
        estimate: Physical state after clipping negative eigenvalues
        raw: Linear-inversion output before the repair
        shots_used: Total measurement repetitions behind the estimate (0 for
            exact expectations)
    """
    estimate: DensityOperator
    raw: ComplexMatrix
    shots_used: int = 0
