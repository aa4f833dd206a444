"""Deutsch-Jozsa and period finding as recognition problems - platform independent.

Both algorithms are simulated by explicit matrix products. Their final
states are then classified against class projections: |0><0| (x) 1 versus
|1><1| (x) 1 for Deutsch-Jozsa, and the basis projectors |jN/r><jN/r| for
period finding.
"""
from __future__ import annotations

import logging
import math
from collections import Counter
from typing import Dict, List, Sequence

import numpy as np

from nkpr.domain import tensor_core as tc
from nkpr.domain.quantum_objects import born_probability, outcome_probabilities
from nkpr.domain.rng import make_rng
from nkpr.errors import DimensionMismatchError, PeriodicityError, ValidationError
from nkpr.models.classes import SOFT, ClassificationResult, argmax_lowest
from nkpr.models.demos import BALANCED, CONSTANT, BooleanFunctionSpec, PeriodInstance, PeriodOutcome
from nkpr.models.matrix import ComplexMatrix, as_matrix, as_vector
from nkpr.models.states import DensityOperator, PovmMeasurement, Projection

logger = logging.getLogger(__name__)

HADAMARD = as_matrix(np.array([[1, 1], [1, -1]]) / math.sqrt(2))
DJ_CLASSES = (CONSTANT, BALANCED)
# Born probabilities below this are round-off and read as exact zeros.
BORN_ZERO_ATOL = 1e-12


def oracle_matrix(f: BooleanFunctionSpec) -> ComplexMatrix:
    """Permutation |x>|y> -> |x>|y XOR f(x)> on two qubits (index 2x + y)."""
    u = np.zeros((4, 4))
    for x in (0, 1):
        for y in (0, 1):
            u[2 * x + (y ^ f.table[x]), 2 * x + y] = 1.0
    return as_matrix(u)


def dj_final_vector(f: BooleanFunctionSpec) -> np.ndarray:
    """State vector before measurement: (H (x) 1) U_f (H (x) H) |0>|1>."""
    start = np.zeros(4, dtype=np.complex128)
    start[1] = 1.0
    circuit = (np.asarray(tc.tensor_product(HADAMARD, tc.identity(2)))
               @ np.asarray(oracle_matrix(f))
               @ np.asarray(tc.tensor_product(HADAMARD, HADAMARD)))
    return circuit @ start


def dj_closed_form_vector(f: BooleanFunctionSpec) -> np.ndarray:
    """Closed-form output (-1)^{f(0)} 1/2 ((1 + s)|0> + (1 - s)|1>)(|0> - |1>)/sqrt(2),
    with s = (-1)^{f(0) XOR f(1)}.

    The second register carries its 1/sqrt(2) so the vector is normalized.
    """
    f0, f1 = f.table
    s = (-1) ** (f0 ^ f1)
    first = np.array([(1 + s) / 2, (1 - s) / 2], dtype=np.complex128)
    second = np.array([1, -1], dtype=np.complex128) / math.sqrt(2)
    return (-1) ** f0 * np.kron(first, second)


def dj_final_state(f: BooleanFunctionSpec) -> DensityOperator:
    """Density operator |psi><psi| of the Deutsch-Jozsa output; global phase drops out."""
    return DensityOperator.from_vector(dj_final_vector(f))


def dj_class_projections() -> List[Projection]:
    """|0><0| (x) 1 (constant) and |1><1| (x) 1 (balanced)."""
    return [Projection(tc.tensor_product(as_matrix(np.diag([1.0, 0.0])), tc.identity(2))),
            Projection(tc.tensor_product(as_matrix(np.diag([0.0, 1.0])), tc.identity(2)))]


def dj_classify(state: DensityOperator) -> ClassificationResult:
    """Born probabilities of the two class projections, decided by the larger.

    Raises:
        DimensionMismatchError: if ``state`` is not a two-qubit state
    """
    if state.dim != 4:
        raise DimensionMismatchError(f'Deutsch-Jozsa output is a two-qubit state, got dimension {state.dim}')
    probs = [born_probability(state, p) for p in dj_class_projections()]
    probs = [0.0 if p < BORN_ZERO_ATOL else p for p in probs]
    total = math.fsum(probs)
    posteriors = tuple(p / total for p in probs)
    return ClassificationResult(posteriors=posteriors, decided=argmax_lowest(posteriors), mode=SOFT,
                                names=DJ_CLASSES, scores=tuple(probs), metric='born')


def qft_matrix(n: int) -> ComplexMatrix:
    """Quantum Fourier transform F_ab = exp(2 pi i a b / N) / sqrt(N)."""
    if n < 1:
        raise ValidationError(f'N must be positive, got {n}')
    a = np.arange(n)
    return as_matrix(np.exp(2j * np.pi * np.outer(a, a) / n) / math.sqrt(n))


def period_state(inst: PeriodInstance) -> np.ndarray:
    """First-register state after measuring f(x) = y0 in the second register.

    Prepares (1/sqrt N) sum_x |x>|f(x)>, projects the second register onto
    |f(x0)>, renormalizes and reads off the first register, which is
    (1/sqrt K) sum_k |x0 + k r>.
    """
    n, r = inst.n, inst.r
    joint = np.zeros((n, r), dtype=np.complex128)
    for x in range(n):
        joint[x, inst.value(x)] = 1.0 / math.sqrt(n)
    collapsed = joint[:, inst.value(inst.x0)]
    return np.asarray(as_vector(collapsed / np.linalg.norm(collapsed)))


def period_distribution(inst: PeriodInstance) -> np.ndarray:
    """Probability of each computational-basis outcome c after the QFT."""
    transformed = np.asarray(qft_matrix(inst.n)) @ period_state(inst)
    return outcome_probabilities(DensityOperator.from_vector(transformed),
                                 PovmMeasurement.computational(inst.n))


def recover_period(c: int, n: int) -> int:
    """Denominator of c/N in lowest terms (c = 0 gives 1)."""
    if not 0 <= c < n:
        raise ValidationError(f'outcome {c} outside [0, {n})')
    return n // math.gcd(c, n)


def period_classify(inst: PeriodInstance, trials: int, seed: int) -> List[PeriodOutcome]:
    """Sample the post-QFT basis measurement and guess the period from each outcome.

    Returns:
        One outcome per trial, in trial order
    """
    if trials < 1:
        raise ValidationError(f'trials must be positive, got {trials}')
    probs = period_distribution(inst)
    draws = make_rng(seed).choice(inst.n, size=trials, p=probs)
    outcomes = []
    for c in draws:
        q = recover_period(int(c), inst.n)
        outcomes.append(PeriodOutcome(c=int(c), candidate_q=q, success=q == inst.r))
    return outcomes


def euler_phi(r: int) -> int:
    """Number of j in [0, r) coprime to r."""
    return sum(1 for j in range(r) if math.gcd(j, r) == 1)


def theoretical_success(r: int) -> float:
    return euler_phi(r) / r


def empirical_distribution(outcomes: Sequence[PeriodOutcome]) -> Dict[int, float]:
    counts = Counter(o.c for o in outcomes)
    return {c: counts[c] / len(outcomes) for c in sorted(counts)}


def success_rate(outcomes: Sequence[PeriodOutcome]) -> float:
    return sum(o.success for o in outcomes) / len(outcomes)


def period_instance_from_table(values: Sequence[object], x0: int = 0) -> PeriodInstance:
    """Instance for a function given as its value table on Z_N.

    The period is the smallest r dividing N with f(x + r) = f(x) for all x;
    the function must not repeat a value inside one period.

    Raises:
        PeriodicityError: if the table is empty or repeats a value within a period
    """
    table = list(values)
    n = len(table)
    if n == 0:
        raise PeriodicityError('the function table is empty')
    r = next(p for p in range(1, n + 1)
             if n % p == 0 and all(table[x] == table[x + p] for x in range(n - p)))
    if len(set(table[:r])) != r:
        raise PeriodicityError(f'function repeats a value within its period {r}')
    logger.debug('table of length %d has period %d', n, r)
    return PeriodInstance(n=n, r=r, x0=x0)
