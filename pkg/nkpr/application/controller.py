"""Application service that orchestrates the nkpr use cases.

The RecognitionController coordinates between domain logic and adapters.
Each public method implements one subcommand: it loads the documents it
needs through the document repository, runs the domain operation and
returns a JSON-ready report. Writing the report is left to the caller.
"""
from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Sequence

import numpy as np

from nkpr.adapters.storage import json_codec
from nkpr.domain import algorithms
from nkpr.domain import tensor_core as tc
from nkpr.domain.event_lattice import (
    check_distributivity,
    check_orthomodularity,
    nondistributive_triple,
    random_orthogonal_family,
    verify_state_axioms,
)
from nkpr.domain.learning import run_learning
from nkpr.domain.quantum_objects import random_density
from nkpr.domain.recognition import classify_samples, classify_state
from nkpr.domain.rng import derive_seed, make_rng
from nkpr.domain.tomography import run_tomography
from nkpr.errors import UsageError
from nkpr.models.demos import BooleanFunctionSpec, PeriodInstance
from nkpr.models.lattice import EventLattice, GeneralizedState

if TYPE_CHECKING:
    from nkpr.models.config import dotdict
    from nkpr.ports.document_repository import IDocumentRepository

logger = logging.getLogger(__name__)

# Offsets into the seed stream of a lattice run, one per sub-check.
_STATE_SEED, _FAMILY_SEED, _ORTHO_SEED, _DISTRIB_SEED = range(4)


class RecognitionController:
    """Main application controller for nkpr.

    Attributes:
        documents: Repository the input documents are read from
        settings: Settings object (defaults plus config-file overrides)
    """

    def __init__(self, documents: IDocumentRepository, settings: dotdict) -> None:
        """Initialize the controller.

        Args:
            documents: Input document repository
            settings: Settings used for every value a command leaves out
        """
        self.documents = documents
        self.settings = settings

    def _setting(self, value: Any, key: str) -> Any:
        return self.settings[key] if value is None else value

    def classify(
        self,
        model_path: str,
        input_path: Optional[str] = None,
        metric: Optional[str] = None,
        counts_path: Optional[str] = None,
        povm_path: Optional[str] = None
    ) -> Dict[str, Any]:
        """Classify a known state by distance, or measurement counts by likelihood.

        Args:
            model_path: Class model document
            input_path: Density document of the individual (distance mode)
            metric: 'trace', 'fidelity' or 'hs' (distance mode)
            counts_path: Outcome counts document (likelihood mode)
            povm_path: POVM document the counts were taken with

        Returns:
            Encoded ClassificationResult
        """
        model = json_codec.decode_model(self.documents.load(model_path), 'model')
        if input_path is not None:
            state = json_codec.decode_density(self.documents.load(input_path), 'input')
            result = classify_state(model, state, metric or 'trace')
        elif counts_path is not None and povm_path is not None:
            counts = json_codec.decode_counts(self.documents.load(counts_path))
            povm = json_codec.decode_povm(self.documents.load(povm_path))
            result = classify_samples(model, povm, counts)
        else:
            raise UsageError('classify needs --input, or both --counts and --povm')
        logger.debug('classified as %s', result.decided_name)
        return json_codec.encode_result(result)

    def demo_dj(self, function_id: str) -> Dict[str, Any]:
        """Run Deutsch-Jozsa on one of f1..f4 and classify the output state."""
        f = BooleanFunctionSpec(function_id)
        result = algorithms.dj_classify(algorithms.dj_final_state(f))
        return {
            'function': f.id,
            'table': list(f.table),
            'class': result.decided_name,
            'posterior': list(result.posteriors),
            'born_probabilities': list(result.scores),
        }

    def demo_period(
        self,
        n: Optional[int] = None,
        r: Optional[int] = None,
        x0: int = 0,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        table: Optional[Sequence[str]] = None
    ) -> Dict[str, Any]:
        """Run seeded period-finding trials.

        Args:
            n: Domain size N (ignored with ``table``)
            r: Period (ignored with ``table``)
            x0: Offset selected by the second-register measurement
            trials: Number of trials
            seed: Sampling seed
            table: Function value table; the period is inferred from it

        Returns:
            Empirical outcome distribution, success rate and the
            theoretical success rate phi(r)/r
        """
        trials = self._setting(trials, 'trials')
        seed = self._setting(seed, 'seed')
        if table is not None:
            inst = algorithms.period_instance_from_table(table, x0)
        elif n is None or r is None:
            raise UsageError('demo period needs --n and --r, or --table')
        else:
            inst = PeriodInstance(n=n, r=r, x0=x0)
        outcomes = algorithms.period_classify(inst, trials, seed)
        distribution = algorithms.empirical_distribution(outcomes)
        return {
            'n': inst.n,
            'r': inst.r,
            'x0': inst.x0,
            'trials': trials,
            'distribution': {str(c): p for c, p in distribution.items()},
            'success_rate': algorithms.success_rate(outcomes),
            'theoretical': algorithms.theoretical_success(inst.r),
        }

    def lattice_verify(
        self,
        kind: str,
        size: int,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
        tol: Optional[float] = None
    ) -> Dict[str, Any]:
        """Check state axioms, orthomodularity and distributivity on one lattice.

        A seeded random state (atom probabilities, or the Born state of a
        random density operator) is tested for normalization and additivity
        on ``samples`` random orthogonal families; the lattice itself is
        tested on ``samples`` random pairs and triples.
        """
        samples = self._setting(samples, 'samples')
        seed = self._setting(seed, 'seed')
        tol = self._setting(tol, 'tol')
        if kind == 'boolean':
            lat = EventLattice.boolean(size)
            rng = make_rng(derive_seed(seed, _STATE_SEED))
            nu = GeneralizedState(lat, probabilities=tuple(rng.dirichlet(np.ones(size))))
            explicit: List[Any] = []
        else:
            lat = EventLattice.projection(size)
            nu = GeneralizedState.born(random_density(size, make_rng(derive_seed(seed, _STATE_SEED))))
            explicit = [nondistributive_triple(size)] if size >= 2 else []

        family_rng = make_rng(derive_seed(seed, _FAMILY_SEED))
        families = [random_orthogonal_family(lat, family_rng) for _ in range(samples)]
        axioms = verify_state_axioms(nu, families, tol)
        ortho = check_orthomodularity(lat, samples, derive_seed(seed, _ORTHO_SEED))
        distributivity = check_distributivity(lat, samples, derive_seed(seed, _DISTRIB_SEED), triples=explicit)
        report = json_codec.encode_lattice_report(axioms, ortho, distributivity)
        report.update({'type': kind, 'size': size, 'samples': samples})
        return report

    def learn(self, scenario_path: str) -> Dict[str, Any]:
        """Run a learning scenario and report its entropy trace."""
        scenario = json_codec.decode_scenario(self.documents.load(scenario_path))
        trace = run_learning(scenario)
        return json_codec.encode_trace(trace, scenario.entropy)

    def tomography(self, true_state_path: str, shots: Optional[int] = None,
                   seed: Optional[int] = None) -> Dict[str, Any]:
        """Simulate finite-shot tomography of a known state.

        Returns:
            The repaired estimate and its Frobenius distance to the true state
        """
        shots = self._setting(shots, 'shots')
        seed = self._setting(seed, 'seed')
        true_state = json_codec.decode_density(self.documents.load(true_state_path), 'true_state')
        result = run_tomography(true_state, shots, seed)
        error = tc.frobenius_norm(np.asarray(result.estimate.matrix) - np.asarray(true_state.matrix))
        logger.debug('tomography with %d shots: Frobenius error %.3e', shots, error)
        return json_codec.encode_tomography(result, error)
