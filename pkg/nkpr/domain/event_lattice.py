"""Event algebras and generalized states - platform independent.

Lattice operations on the two supported families (finite Boolean lattices
and projection lattices of C^d), evaluation of generalized states, and the
sampled structural checks: state axioms, orthomodularity and distributivity.
"""
from __future__ import annotations

import logging
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from nkpr.domain import tensor_core as tc
from nkpr.domain.quantum_objects import born_probability
from nkpr.domain.rng import make_rng
from nkpr.errors import DimensionMismatchError, MixedLatticeError, NonOrthogonalFamilyError, ValidationError
from nkpr.models.lattice import (
    AxiomReport,
    BooleanEvent,
    DistributivityReport,
    Event,
    EventLattice,
    GeneralizedState,
    OrthomodularityReport,
)
from nkpr.models.states import Projection

logger = logging.getLogger(__name__)

RANK_RTOL = 1e-10
EQUALITY_ATOL = 1e-8
ORTHOGONAL_ATOL = 1e-9
COMMUTE_ATOL = 1e-9


def lattice_of(a: Event) -> EventLattice:
    if isinstance(a, BooleanEvent):
        return EventLattice.boolean(a.n_atoms)
    if isinstance(a, Projection):
        return EventLattice.projection(a.dim)
    raise MixedLatticeError(f'{a!r} is not a lattice event')


def _same_lattice(a: Event, b: Event) -> EventLattice:
    lat = lattice_of(a)
    lat.require_member(b)
    return lat


def _range_projector(columns: np.ndarray, d: int) -> Projection:
    """Projector onto the column space, with numerical rank from the singular values."""
    if columns.size == 0:
        return Projection.zero(d)
    u, s, _ = scipy.linalg.svd(columns, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return Projection.zero(d)
    rank = int(np.sum(s > RANK_RTOL * s[0]))
    q = u[:, :rank]
    return Projection(q @ q.conj().T)


def lattice_join(a: Event, b: Event) -> Event:
    """Least upper bound: union of atoms, or projector onto range(A) + range(B)."""
    lat = _same_lattice(a, b)
    if lat.is_boolean:
        return BooleanEvent(a.atoms | b.atoms, lat.size)
    return _range_projector(np.hstack([np.asarray(a.matrix), np.asarray(b.matrix)]), lat.size)


def lattice_ortho(a: Event) -> Event:
    """Orthocomplement: set complement, or I - P."""
    lat = lattice_of(a)
    if lat.is_boolean:
        return BooleanEvent(frozenset(range(lat.size)) - a.atoms, lat.size)
    return Projection(np.eye(lat.size) - np.asarray(a.matrix))


def lattice_meet(a: Event, b: Event) -> Event:
    """Greatest lower bound: intersection of atoms, or projector onto range(A) ∩ range(B).

    The projection meet is the orthocomplement of ker(A) + ker(B).
    """
    lat = _same_lattice(a, b)
    if lat.is_boolean:
        return BooleanEvent(a.atoms & b.atoms, lat.size)
    return lattice_ortho(lattice_join(lattice_ortho(a), lattice_ortho(b)))


def events_equal(a: Event, b: Event, atol: float = EQUALITY_ATOL) -> bool:
    lat = _same_lattice(a, b)
    if lat.is_boolean:
        return a.atoms == b.atoms
    return float(np.linalg.norm(np.asarray(a.matrix) - np.asarray(b.matrix))) < atol


def lattice_leq(a: Event, b: Event) -> bool:
    """Order relation a <= b (for projections: BA = A)."""
    lat = _same_lattice(a, b)
    if lat.is_boolean:
        return a.atoms <= b.atoms
    pa = np.asarray(a.matrix)
    return float(np.linalg.norm(np.asarray(b.matrix) @ pa - pa)) < EQUALITY_ATOL


def is_orthogonal(a: Event, b: Event) -> bool:
    """Disjoint atoms, or ||AB|| below the projector tolerance."""
    lat = _same_lattice(a, b)
    if lat.is_boolean:
        return not (a.atoms & b.atoms)
    return float(np.linalg.norm(np.asarray(a.matrix) @ np.asarray(b.matrix))) < ORTHOGONAL_ATOL


def commutes(p: Projection, q: Projection) -> bool:
    pm, qm = np.asarray(p.matrix), np.asarray(q.matrix)
    return float(np.linalg.norm(pm @ qm - qm @ pm)) < COMMUTE_ATOL


def lattice_join_all(lat: EventLattice, events: Iterable[Event]) -> Event:
    return reduce(lattice_join, events, lat.bottom())


def evaluate_state(nu: GeneralizedState, a: Event) -> float:
    """Value nu(a) of a generalized state on an event of its lattice.

    Raises:
        MixedLatticeError: if ``a`` belongs to another lattice
        ValidationError: if a table-backed state has no value for ``a``
    """
    nu.lattice.require_member(a)
    if nu.density is not None:
        return born_probability(nu.density, a)
    if nu.probabilities is not None:
        return float(sum(nu.probabilities[i] for i in a.atoms))
    if a.atoms not in nu.table:
        raise ValidationError(f'state assigns no value to event {sorted(a.atoms)}')
    return nu.table[a.atoms]


def _require_orthogonal_family(family: Sequence[Event]) -> None:
    for i, a in enumerate(family):
        for b in family[i + 1:]:
            meet_is_zero = events_equal(lattice_meet(a, b), lattice_of(a).bottom())
            if not (meet_is_zero and is_orthogonal(a, b) and lattice_leq(a, lattice_ortho(b))):
                raise NonOrthogonalFamilyError(f'events {a!r} and {b!r} are not orthogonal')


def verify_state_axioms(nu: GeneralizedState, families: Iterable[Sequence[Event]],
                        tol: float) -> AxiomReport:
    """Check normalization and additivity over pairwise orthogonal families.

    Args:
        nu: State under test
        families: Pairwise orthogonal event families
        tol: Largest residual that still passes

    Returns:
        Report with the normalization residual and one additivity residual
        per family

    Raises:
        NonOrthogonalFamilyError: if a family is not pairwise orthogonal
    """
    lat = nu.lattice
    normalization = abs(evaluate_state(nu, lat.top()) - 1.0)
    residuals: List[float] = []
    for family in families:
        family = list(family)
        for a in family:
            lat.require_member(a)
        _require_orthogonal_family(family)
        joined = lattice_join_all(lat, family)
        total = sum(evaluate_state(nu, a) for a in family)
        residuals.append(abs(evaluate_state(nu, joined) - total))
    report = AxiomReport(normalization=normalization, additivity=tuple(residuals), tol=tol)
    logger.debug('state axioms: normalization %.3e, additivity max %.3e over %d families',
                 report.normalization, report.additivity_max, len(residuals))
    return report


def random_event(lat: EventLattice, rng: np.random.Generator) -> Event:
    """Seeded random event: random atom subset, or the span of the leading k
    columns of a Haar unitary with k uniform in [0, d]."""
    if lat.is_boolean:
        mask = rng.random(lat.size) < 0.5
        return BooleanEvent(frozenset(np.flatnonzero(mask).tolist()), lat.size)
    u = np.asarray(tc.random_unitary(lat.size, rng))
    k = int(rng.integers(0, lat.size + 1))
    return Projection(u[:, :k] @ u[:, :k].conj().T)


def random_orthogonal_family(lat: EventLattice, rng: np.random.Generator) -> List[Event]:
    """Seeded random pairwise orthogonal family.

    Atoms (or the columns of a Haar unitary) are dealt into up to ``size``
    groups, some left unused; every nonempty group becomes one event.
    """
    n = lat.size
    groups = rng.integers(-1, n, size=n)
    if lat.is_boolean:
        return [BooleanEvent(frozenset(np.flatnonzero(groups == g).tolist()), n)
                for g in range(n) if np.any(groups == g)]
    u = np.asarray(tc.random_unitary(n, rng))
    family: List[Event] = []
    for g in range(n):
        cols = u[:, groups == g]
        if cols.shape[1]:
            family.append(Projection(cols @ cols.conj().T))
    return family


def _random_pair(lat: EventLattice, rng: np.random.Generator) -> Tuple[Event, Event]:
    """Pair (a, c), built with a <= c half of the time and independent otherwise."""
    nested = rng.random() < 0.5
    if lat.is_boolean:
        c = random_event(lat, rng)
        if not nested:
            return random_event(lat, rng), c
        keep = [x for x in sorted(c.atoms) if rng.random() < 0.5]
        return BooleanEvent(frozenset(keep), lat.size), c
    d = lat.size
    u = np.asarray(tc.random_unitary(d, rng))
    k = int(rng.integers(0, d + 1))
    basis_c = u[:, :k]
    c = Projection(basis_c @ basis_c.conj().T)
    if not nested or k == 0:
        return random_event(lat, rng), c
    w = np.asarray(tc.random_unitary(k, rng))
    j = int(rng.integers(0, k + 1))
    basis_a = basis_c @ w[:, :j]
    return Projection(basis_a @ basis_a.conj().T), c


def check_orthomodularity(lat: EventLattice, samples: int, seed: int) -> OrthomodularityReport:
    """Check a <= c implies a v (a' ^ c) = c on seeded sampled pairs.

    Pairs with a not below c do not satisfy the premise and are skipped.
    """
    rng = make_rng(seed)
    checked = skipped = failures = 0
    for _ in range(samples):
        a, c = _random_pair(lat, rng)
        if not lattice_leq(a, c):
            skipped += 1
            continue
        checked += 1
        if not events_equal(lattice_join(a, lattice_meet(lattice_ortho(a), c)), c):
            failures += 1
            logger.debug('orthomodular law fails for %r <= %r', a, c)
    return OrthomodularityReport(checked=checked, skipped=skipped, failures=failures)


def is_distributive_triple(a: Event, b: Event, c: Event) -> bool:
    lhs = lattice_meet(a, lattice_join(b, c))
    rhs = lattice_join(lattice_meet(a, b), lattice_meet(a, c))
    return events_equal(lhs, rhs)


def random_commuting_triple(lat: EventLattice, rng: np.random.Generator) -> Tuple[Event, Event, Event]:
    """Three projectors diagonal in one shared random basis (Boolean: any triple)."""
    if lat.is_boolean:
        return random_event(lat, rng), random_event(lat, rng), random_event(lat, rng)
    u = np.asarray(tc.random_unitary(lat.size, rng))
    triple = []
    for _ in range(3):
        cols = u[:, rng.random(lat.size) < 0.5]
        triple.append(Projection(cols @ cols.conj().T))
    return triple[0], triple[1], triple[2]


def check_distributivity(lat: EventLattice, samples: int, seed: int,
                         triples: Optional[Iterable[Tuple[Event, Event, Event]]] = None,
                         commuting: bool = False) -> DistributivityReport:
    """Count sampled triples violating a ^ (b v c) = (a ^ b) v (a ^ c).

    Args:
        lat: Lattice under test
        samples: Number of seeded random triples
        seed: Sampling seed
        triples: Explicit triples checked in addition to the sampled ones
        commuting: Sample mutually commuting triples only

    Returns:
        Report with the number of triples checked and violated
    """
    rng = make_rng(seed)
    checked = violations = 0
    explicit = list(triples or [])
    for a, b, c in explicit:
        for e in (a, b, c):
            lat.require_member(e)
    sampled = (random_commuting_triple(lat, rng) if commuting
               else (random_event(lat, rng), random_event(lat, rng), random_event(lat, rng))
               for _ in range(samples))
    for a, b, c in list(explicit) + list(sampled):
        checked += 1
        if not is_distributive_triple(a, b, c):
            violations += 1
    return DistributivityReport(checked=checked, violations=violations)


def nondistributive_triple(d: int) -> Tuple[Projection, Projection, Projection]:
    """(|0><0|, |+><+|, |-><-|) embedded in the first two basis vectors of C^d.

    |+> v |-> is the whole plane, so a ^ (b v c) = |0><0| while
    (a ^ b) v (a ^ c) = 0.
    """
    if d < 2:
        raise DimensionMismatchError(f'need dimension at least 2, got {d}')
    e = np.eye(d, dtype=np.complex128)
    plus = (e[:, 0] + e[:, 1]) / np.sqrt(2)
    minus = (e[:, 0] - e[:, 1]) / np.sqrt(2)
    return Projection.onto(e[:, [0]]), Projection.onto(plus[:, None]), Projection.onto(minus[:, None])
