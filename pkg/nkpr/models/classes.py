"""Class models and classification results."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Hashable, Mapping, Optional, Sequence, Tuple

import numpy as np

from nkpr.errors import DimensionMismatchError, ValidationError, WeightNormalizationError
from nkpr.models.states import DensityOperator

PROBABILITY_ATOL = 1e-10
TIE_ATOL = 1e-12

HARD = 'hard'
SOFT = 'soft'


def _require_normalized(values: Sequence[float], what: str) -> None:
    if any(v < 0.0 or not math.isfinite(v) for v in values):
        raise WeightNormalizationError(f'{what} must be nonnegative, got {list(values)}')
    if abs(math.fsum(values) - 1.0) > PROBABILITY_ATOL:
        raise WeightNormalizationError(f'{what} sum to {math.fsum(values)!r}, expected 1')


def argmax_lowest(values: Sequence[float], atol: float = TIE_ATOL) -> int:
    """Index of the maximum; near-ties go to the lowest index."""
    best = max(values)
    return next(i for i, v in enumerate(values) if v >= best - atol)


@dataclass(frozen=True, eq=False)
class Member:
    """One training object of a class: its weight and state."""
    weight: float
    state: DensityOperator


@dataclass(frozen=True, eq=False)
class QuantumClass:
    name: str
    prior: float
    members: Tuple[Member, ...]

    def __post_init__(self) -> None:
        members = tuple(self.members)
        if not members:
            raise ValidationError(f'class {self.name!r} has no members')
        _require_normalized([m.weight for m in members], f'member weights of class {self.name!r}')
        object.__setattr__(self, 'members', members)


@dataclass(frozen=True, eq=False)
class ClassModel:
    """Named classes with priors, each a weighted mixture of member states.

    Attributes:
        classes: Classes in decision order (ties go to the lowest index)
    """
    classes: Tuple[QuantumClass, ...]

    def __post_init__(self) -> None:
        classes = tuple(self.classes)
        object.__setattr__(self, 'classes', classes)
        if not classes:
            return
        _require_normalized([c.prior for c in classes], 'class priors')
        dims = {m.state.dim for c in classes for m in c.members}
        if len(dims) != 1:
            raise DimensionMismatchError(f'member states have mixed dimensions {sorted(dims)}')

    @property
    def dim(self) -> Optional[int]:
        return self.classes[0].members[0].state.dim if self.classes else None

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.classes)

    @property
    def priors(self) -> Tuple[float, ...]:
        return tuple(c.prior for c in self.classes)


@dataclass(frozen=True)
class FeatureVector:
    """Observed property values of one classical object."""
    values: Tuple[float, ...]

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        if not all(math.isfinite(v) for v in values):
            raise ValidationError('feature values must be finite')
        object.__setattr__(self, 'values', values)


@dataclass(frozen=True, eq=False)
class ClassicalClass:
    name: str
    prior: float
    distribution: Mapping[Hashable, float]

    def __post_init__(self) -> None:
        dist = dict(self.distribution)
        if not dist:
            raise ValidationError(f'class {self.name!r} has an empty distribution')
        _require_normalized(list(dist.values()), f'distribution of class {self.name!r}')
        object.__setattr__(self, 'distribution', dist)


@dataclass(frozen=True, eq=False)
class ClassicalClassModel:
    """Classes described by probability distributions over a finite feature alphabet."""
    classes: Tuple[ClassicalClass, ...]

    def __post_init__(self) -> None:
        classes = tuple(self.classes)
        object.__setattr__(self, 'classes', classes)
        if classes:
            _require_normalized([c.prior for c in classes], 'class priors')

    @property
    def alphabet(self) -> frozenset:
        return frozenset(s for c in self.classes for s in c.distribution)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.classes)


@dataclass(frozen=True)
class ClassificationResult:
    """Class posteriors and the decision taken from them.

    Attributes:
        posteriors: Probability per class, in model order
        decided: Index of the decided class (argmax, lowest index on ties)
        mode: 'hard' (one-hot, from a distance) or 'soft' (Bayesian)
        names: Class names in model order
        scores: Metric value per class for hard decisions, else empty
        metric: Name of the metric behind a hard decision
    """
    posteriors: Tuple[float, ...]
    decided: int
    mode: str
    names: Tuple[str, ...] = ()
    scores: Tuple[float, ...] = field(default=())
    metric: Optional[str] = None

    def __post_init__(self) -> None:
        posteriors = tuple(float(p) for p in self.posteriors)
        if not posteriors:
            raise ValidationError('a classification result needs at least one class')
        if any(p < 0.0 for p in posteriors) or abs(math.fsum(posteriors) - 1.0) > PROBABILITY_ATOL:
            raise ValidationError(f'posteriors must form a probability vector, got {posteriors}')
        if self.mode not in (HARD, SOFT):
            raise ValidationError(f'unknown classification mode {self.mode!r}')
        if self.decided != argmax_lowest(posteriors):
            raise ValidationError('decided class must be the lowest-index argmax of the posteriors')
        object.__setattr__(self, 'posteriors', posteriors)

    @property
    def decided_name(self) -> Any:
        return self.names[self.decided] if self.names else self.decided

    @classmethod
    def one_hot(cls, n: int, decided: int, **kwargs: Any) -> ClassificationResult:
        posteriors = tuple(float(x) for x in np.eye(n)[decided])
        return cls(posteriors=posteriors, decided=decided, mode=HARD, **kwargs)
