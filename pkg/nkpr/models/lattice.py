"""Event lattices, generalized states and structural-check reports."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple, Union

import numpy as np

from nkpr.errors import MixedLatticeError, ValidationError
from nkpr.models.states import DensityOperator, Projection

NORMALIZATION_ATOL = 1e-10

BOOLEAN = 'boolean'
PROJECTION = 'projection'


@dataclass(frozen=True)
class BooleanEvent:
    """Set of atoms of a finite Boolean lattice with ``n_atoms`` atoms."""
    atoms: FrozenSet[int]
    n_atoms: int

    def __post_init__(self) -> None:
        atoms = frozenset(int(a) for a in self.atoms)
        if any(a < 0 or a >= self.n_atoms for a in atoms):
            raise ValidationError(f'atoms {sorted(atoms)} out of range for {self.n_atoms} atoms')
        object.__setattr__(self, 'atoms', atoms)

    def __repr__(self) -> str:
        return f'BooleanEvent({sorted(self.atoms)}/{self.n_atoms})'


Event = Union[BooleanEvent, Projection]


@dataclass(frozen=True)
class EventLattice:
    """Either the Boolean lattice on n atoms or the projection lattice of C^d.

    Projection lattices are infinite and are never enumerated; events exist
    only as the Projection values somebody constructed.

    Attributes:
        kind: 'boolean' or 'projection'
        size: Number of atoms (Boolean) or Hilbert-space dimension (projection)
    """
    kind: str
    size: int

    def __post_init__(self) -> None:
        if self.kind not in (BOOLEAN, PROJECTION):
            raise ValidationError(f'unknown lattice kind {self.kind!r}')
        if self.size < 1:
            raise ValidationError(f'lattice size must be positive, got {self.size}')

    @classmethod
    def boolean(cls, n_atoms: int) -> EventLattice:
        return cls(BOOLEAN, n_atoms)

    @classmethod
    def projection(cls, d: int) -> EventLattice:
        return cls(PROJECTION, d)

    @property
    def is_boolean(self) -> bool:
        return self.kind == BOOLEAN

    def top(self) -> Event:
        if self.is_boolean:
            return BooleanEvent(frozenset(range(self.size)), self.size)
        return Projection.identity(self.size)

    def bottom(self) -> Event:
        if self.is_boolean:
            return BooleanEvent(frozenset(), self.size)
        return Projection.zero(self.size)

    def require_member(self, a: Event) -> None:
        """Raise MixedLatticeError unless ``a`` is an event of this lattice."""
        if self.is_boolean:
            ok = isinstance(a, BooleanEvent) and a.n_atoms == self.size
        else:
            ok = isinstance(a, Projection) and a.dim == self.size
        if not ok:
            raise MixedLatticeError(f'{a!r} is not an event of the {self.kind} lattice of size {self.size}')


@dataclass(frozen=True, eq=False)
class GeneralizedState:
    """A state nu: L -> [0, 1] on an event lattice.

    Exactly one backing is set: a probability vector over Boolean atoms, a
    density operator (Born rule on the projection lattice), or an explicit
    table of values on Boolean events (for assignments that are not measures).
    """
    lattice: EventLattice
    probabilities: Optional[Tuple[float, ...]] = None
    density: Optional[DensityOperator] = None
    table: Optional[Mapping[FrozenSet[int], float]] = field(default=None)

    def __post_init__(self) -> None:
        backings = [b for b in (self.probabilities, self.density, self.table) if b is not None]
        if len(backings) != 1:
            raise ValidationError('a generalized state needs exactly one backing')
        if self.probabilities is not None:
            self._check_probabilities()
        elif self.density is not None:
            if self.lattice.is_boolean or self.density.dim != self.lattice.size:
                raise MixedLatticeError('a density operator backs only the projection lattice of its dimension')
        else:
            self._check_table()

    def _check_probabilities(self) -> None:
        if not self.lattice.is_boolean:
            raise MixedLatticeError('a probability vector backs only a Boolean lattice')
        p = np.asarray(self.probabilities, dtype=np.float64)
        if p.shape != (self.lattice.size,):
            raise ValidationError(f'{p.size} probabilities for {self.lattice.size} atoms')
        if np.any(p < 0.0) or abs(float(p.sum()) - 1.0) > NORMALIZATION_ATOL:
            raise ValidationError(f'atom probabilities must be nonnegative and sum to 1, got {p.tolist()}')
        object.__setattr__(self, 'probabilities', tuple(float(x) for x in p))

    def _check_table(self) -> None:
        if not self.lattice.is_boolean:
            raise MixedLatticeError('an explicit table backs only a Boolean lattice')
        table: Dict[FrozenSet[int], float] = {frozenset(k): float(v) for k, v in self.table.items()}
        if any(not 0.0 <= v <= 1.0 for v in table.values()):
            raise ValidationError('state values must lie in [0, 1]')
        top = frozenset(range(self.lattice.size))
        if abs(table.get(top, 0.0) - 1.0) > NORMALIZATION_ATOL:
            raise ValidationError('state must assign 1 to the top element')
        object.__setattr__(self, 'table', table)

    @classmethod
    def from_probabilities(cls, p: Iterable[float]) -> GeneralizedState:
        values = tuple(p)
        return cls(EventLattice.boolean(len(values)), probabilities=values)

    @classmethod
    def born(cls, rho: DensityOperator) -> GeneralizedState:
        return cls(EventLattice.projection(rho.dim), density=rho)

    @classmethod
    def from_table(cls, n_atoms: int, table: Mapping[Iterable[int], float]) -> GeneralizedState:
        return cls(EventLattice.boolean(n_atoms), table={frozenset(k): v for k, v in table.items()})


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of checking normalization and additivity of a state.

    Attributes:
        normalization: |nu(top) - 1|
        additivity: Per family, |nu(join of family) - sum of nu over the family|
        tol: Tolerance the residuals were judged against
    """
    normalization: float
    additivity: Tuple[float, ...]
    tol: float

    @property
    def additivity_max(self) -> float:
        return max(self.additivity, default=0.0)

    @property
    def passed(self) -> bool:
        return self.normalization <= self.tol and self.additivity_max <= self.tol


@dataclass(frozen=True)
class OrthomodularityReport:
    """Sampled pairs a <= c checked for a v (a' ^ c) = c; pairs with a not below c are skipped."""
    checked: int
    skipped: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass(frozen=True)
class DistributivityReport:
    """Sampled triples checked for a ^ (b v c) = (a ^ b) v (a ^ c)."""
    checked: int
    violations: int

    @property
    def violation_rate(self) -> float:
        return self.violations / self.checked if self.checked else 0.0
