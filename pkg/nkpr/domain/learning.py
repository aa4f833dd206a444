"""Quantum learning processes - platform independent.

A learning scenario is an initial global state and a timed family of
channels; running it produces the succession of global states and their
entropies. Learning succeeds when the final state is less uncertain than
the initial one.
"""
from __future__ import annotations

import logging
from typing import Callable, Dict, List, Tuple

from nkpr.domain import tensor_core as tc
from nkpr.domain.channels import build_channel
from nkpr.domain.quantum_objects import (
    apply_channel,
    linear_entropy,
    renyi_entropy,
    von_neumann_entropy,
)
from nkpr.models.learning import LearningScenario, LearningTrace
from nkpr.models.states import DensityOperator

logger = logging.getLogger(__name__)

SUCCESS_SLACK = 1e-12

ENTROPIES: Dict[str, Callable[[DensityOperator], float]] = {
    'von_neumann': von_neumann_entropy,
    'renyi2': lambda rho: renyi_entropy(rho, 2.0),
    'linear': linear_entropy,
}


def _marginal_entropies(rho: DensityOperator, dims: Tuple[int, ...],
                        entropy: Callable[[DensityOperator], float]) -> Tuple[float, ...]:
    return tuple(entropy(DensityOperator(tc.partial_trace(rho.matrix, dims, [k])))
                 for k in range(len(dims)))


def run_learning(s: LearningScenario) -> LearningTrace:
    """Apply the scenario's channels in time order and record the entropy trace.

    Raises:
        ChannelSpecError: if a step's channel cannot be instantiated
        DimensionMismatchError: if declared dims do not fit the initial state
    """
    entropy = ENTROPIES[s.entropy]
    states: List[DensityOperator] = [s.initial]
    for step in s.steps:
        channel = build_channel(step.channel, states[-1].dim)
        states.append(apply_channel(channel, states[-1]))
        logger.debug('t=%g %s: entropy %.6f', step.time, step.channel.name, entropy(states[-1]))

    entropies = tuple(entropy(rho) for rho in states)
    marginals: Tuple[Tuple[float, ...], ...] = ()
    if s.dims is not None:
        marginals = tuple(_marginal_entropies(rho, s.dims, entropy) for rho in states)
    success = entropies[-1] < entropies[0] - SUCCESS_SLACK
    times = (0.0,) + tuple(float(step.time) for step in s.steps)
    return LearningTrace(times=times, states=tuple(states), entropies=entropies,
                         success=success, marginal_entropies=marginals)
