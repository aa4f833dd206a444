"""Pattern-recognition engine - platform independent.

Class models are weighted mixtures of member states. Inputs are assigned
to classes either by a distance between density operators (hard, one-hot
decisions) or by Bayesian likelihood of measurement counts (soft
posteriors). The classical simplex classifier shares the result type.
"""
from __future__ import annotations

import logging
import math
from collections import Counter
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Union

import numpy as np

from nkpr.domain import tensor_core as tc
from nkpr.domain.quantum_objects import (
    born_probability,
    fidelity,
    hs_distance,
    mixture,
    trace_distance,
)
from nkpr.errors import (
    DimensionMismatchError,
    EmptyModelError,
    UnknownSymbolError,
    ValidationError,
    ZeroLikelihoodError,
)
from nkpr.models.classes import (
    SOFT,
    ClassicalClass,
    ClassicalClassModel,
    ClassificationResult,
    ClassModel,
    FeatureVector,
    Member,
    QuantumClass,
    argmax_lowest,
)
from nkpr.models.states import DensityOperator, PovmMeasurement

logger = logging.getLogger(__name__)

ENTANGLEMENT_ATOL = 1e-10

# metric name -> (distance function, True if larger is closer)
METRICS: Dict[str, tuple] = {
    'trace': (trace_distance, False),
    'fidelity': (fidelity, True),
    'hs': (lambda a, b: hs_distance(a.matrix, b.matrix), False),
}


def build_class_state(members: Sequence[Member]) -> DensityOperator:
    """Mixture of a class's member states with their weights."""
    return mixture([m.state for m in members], [m.weight for m in members])


def class_states(model: ClassModel) -> List[DensityOperator]:
    return [build_class_state(c.members) for c in model.classes]


def _require_model(model: Union[ClassModel, ClassicalClassModel]) -> None:
    if not model.classes:
        raise EmptyModelError('the class model has no classes')


def classify_state(model: ClassModel, input_state: DensityOperator, metric: str) -> ClassificationResult:
    """Assign a known state to the closest class state.

    Args:
        model: Class model
        input_state: State of the individual to classify
        metric: 'trace', 'fidelity' or 'hs'

    Returns:
        Hard (one-hot) result; ties go to the lowest class index

    Raises:
        EmptyModelError: if the model has no classes
        DimensionMismatchError: if the input dimension differs from the model's
    """
    _require_model(model)
    if metric not in METRICS:
        raise ValidationError(f'unknown metric {metric!r}; expected one of {", ".join(METRICS)}')
    if input_state.dim != model.dim:
        raise DimensionMismatchError(f'input has dimension {input_state.dim}, model has {model.dim}')
    measure, larger_is_closer = METRICS[metric]
    scores = [measure(input_state, s) for s in class_states(model)]
    closeness = scores if larger_is_closer else [-s for s in scores]
    decided = argmax_lowest(closeness)
    logger.debug('classify_state %s scores %s -> %d', metric, scores, decided)
    return ClassificationResult.one_hot(len(scores), decided, names=model.names,
                                        scores=tuple(scores), metric=metric)


def classify_batch(model: ClassModel, inputs: Sequence[DensityOperator],
                   metric: str) -> List[ClassificationResult]:
    """classify_state over many inputs, results in input order."""
    return [classify_state(model, rho, metric) for rho in inputs]


def _posterior_from_logs(log_scores: Sequence[float]) -> List[float]:
    finite = [s for s in log_scores if s != -math.inf]
    top = max(finite)
    weights = [math.exp(s - top) if s != -math.inf else 0.0 for s in log_scores]
    total = math.fsum(weights)
    return [w / total for w in weights]


def classify_samples(model: ClassModel, m: PovmMeasurement,
                     counts: Mapping[str, int]) -> ClassificationResult:
    """Bayesian posterior over classes from observed POVM outcome counts.

    p(C_i | counts) is proportional to prior_i * prod_k tr(rho_i E_k)^{n_k},
    accumulated in log space with -inf for impossible outcomes.

    Raises:
        EmptyModelError: if the model has no classes
        ValidationError: if counts are empty or name unknown outcomes
        ZeroLikelihoodError: if every class rules out an observed outcome
    """
    _require_model(model)
    if m.dim != model.dim:
        raise DimensionMismatchError(f'POVM has dimension {m.dim}, model has {model.dim}')
    observed = {str(k): int(n) for k, n in counts.items() if int(n) != 0}
    if not observed:
        raise ValidationError('counts must contain at least one observation')
    unknown = set(observed) - set(m.labels)
    if unknown or any(n < 0 for n in observed.values()):
        raise ValidationError(f'invalid counts for outcomes {sorted(unknown) or sorted(observed)}')

    effects = dict(zip(m.labels, m.effects))
    log_scores = []
    for cls_, rho in zip(model.classes, class_states(model)):
        score = math.log(cls_.prior) if cls_.prior > 0.0 else -math.inf
        for label in sorted(observed):
            p = born_probability(rho, effects[label])
            score += observed[label] * math.log(p) if p > 0.0 else -math.inf
        log_scores.append(score)
    if all(s == -math.inf for s in log_scores):
        raise ZeroLikelihoodError('every class assigns probability zero to the observed counts')
    posteriors = _posterior_from_logs(log_scores)
    return ClassificationResult(posteriors=tuple(posteriors), decided=argmax_lowest(posteriors),
                                mode=SOFT, names=model.names)


def feature_symbol(v: Union[FeatureVector, Sequence[float], Hashable]) -> Hashable:
    """Canonical alphabet symbol of a feature vector (a tuple of floats)."""
    if isinstance(v, FeatureVector):
        return v.values
    if isinstance(v, (list, tuple, np.ndarray)):
        return FeatureVector(tuple(v)).values
    return v


def classical_classify(model: ClassicalClassModel, observed: Hashable) -> ClassificationResult:
    """Bayes posterior p(C_i | x) proportional to prior_i * p_i(x).

    Raises:
        EmptyModelError: if the model has no classes
        UnknownSymbolError: if ``observed`` is outside the model's alphabet
        ZeroLikelihoodError: if no class with positive prior can produce ``observed``
    """
    _require_model(model)
    symbol = feature_symbol(observed)
    if symbol not in model.alphabet:
        raise UnknownSymbolError(f'symbol {symbol!r} is not in the feature alphabet')
    joint = [c.prior * c.distribution.get(symbol, 0.0) for c in model.classes]
    total = math.fsum(joint)
    if total <= 0.0:
        raise ZeroLikelihoodError(f'no class can produce symbol {symbol!r}')
    posteriors = [j / total for j in joint]
    return ClassificationResult(posteriors=tuple(posteriors), decided=argmax_lowest(posteriors),
                                mode=SOFT, names=model.names)


def reduce_global(global_state: DensityOperator, dims: Sequence[int], class_index: int) -> DensityOperator:
    """Reduced state of one tensor factor of a global state.

    The result is flagged ``improper`` when the global state is entangled
    across the cut between the kept factor and the rest, detected by a
    negative eigenvalue of the partial transpose on the kept factor. Every
    entangled pure state is caught this way; classically correlated
    mixtures are not flagged. Such a reduction cannot be read as ignorance
    about a pure state.

    Raises:
        DimensionMismatchError: if the factor dimensions do not match the
            global state or the index is out of range
    """
    reduced = tc.partial_trace(global_state.matrix, dims, [class_index])
    transposed = tc.partial_transpose(global_state.matrix, dims, class_index)
    lowest = float(np.linalg.eigvalsh(np.asarray(transposed))[0])
    return DensityOperator(reduced, improper=lowest < -ENTANGLEMENT_ATOL)


def fit_class_model(training: Mapping[str, Sequence[DensityOperator]],
                    priors: Optional[Mapping[str, float]] = None) -> ClassModel:
    """Class model from labelled training states with equal member weights 1/N_i.

    Priors default to uniform over classes.
    """
    names = list(training)
    if priors is None:
        priors = {name: 1.0 / len(names) for name in names}
    classes = []
    for name in names:
        states = list(training[name])
        if not states:
            raise ValidationError(f'class {name!r} has no training states')
        members = tuple(Member(weight=1.0 / len(states), state=s) for s in states)
        classes.append(QuantumClass(name=name, prior=float(priors[name]), members=members))
    return ClassModel(tuple(classes))


def fit_classical_model(samples: Mapping[str, Sequence[Union[FeatureVector, Hashable]]]) -> ClassicalClassModel:
    """Empirical class distributions from labelled feature vectors.

    Priors are proportional to the number of samples per class.
    """
    total = sum(len(v) for v in samples.values())
    if total == 0:
        raise ValidationError('no training samples')
    classes = []
    for name, vectors in samples.items():
        if not vectors:
            raise ValidationError(f'class {name!r} has no training samples')
        counts = Counter(feature_symbol(v) for v in vectors)
        n = len(vectors)
        classes.append(ClassicalClass(name=name, prior=n / total,
                                      distribution={s: k / n for s, k in counts.items()}))
    return ClassicalClassModel(tuple(classes))
