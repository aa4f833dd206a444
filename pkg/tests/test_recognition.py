"""Tests for nkpr.domain.recognition."""
from __future__ import annotations

import math

import numpy as np
import pytest

from nkpr.domain import tensor_core as tc
from nkpr.domain.quantum_objects import random_density
from nkpr.domain.recognition import (
    build_class_state,
    classical_classify,
    classify_batch,
    classify_samples,
    classify_state,
    fit_class_model,
    fit_classical_model,
    reduce_global,
)
from nkpr.domain.rng import make_rng
from nkpr.errors import (
    DimensionMismatchError,
    EmptyModelError,
    UnknownSymbolError,
    ValidationError,
    WeightNormalizationError,
    ZeroLikelihoodError,
)
from nkpr.models.classes import (
    HARD,
    SOFT,
    ClassicalClass,
    ClassicalClassModel,
    ClassModel,
    FeatureVector,
    Member,
    QuantumClass,
)
from nkpr.models.states import DensityOperator, PovmMeasurement


def model_of(*states: DensityOperator, priors=None) -> ClassModel:
    priors = priors or [1.0 / len(states)] * len(states)
    return ClassModel(tuple(QuantumClass(f'c{i}', p, (Member(1.0, s),))
                            for i, (s, p) in enumerate(zip(states, priors))))


class TestClassModel:
    def test_build_class_state(self, ket0, ket1):
        rho = build_class_state([Member(0.25, ket0), Member(0.75, ket1)])
        np.testing.assert_allclose(rho.matrix, np.diag([0.25, 0.75]), atol=1e-12)

    def test_member_weights_must_normalize(self, ket0, ket1):
        with pytest.raises(WeightNormalizationError):
            QuantumClass('a', 1.0, (Member(0.5, ket0), Member(0.6, ket1)))

    def test_priors_must_normalize(self, ket0, ket1):
        with pytest.raises(WeightNormalizationError):
            model_of(ket0, ket1, priors=[0.5, 0.7])

    def test_mixed_dimensions(self, ket0):
        with pytest.raises(DimensionMismatchError):
            model_of(ket0, DensityOperator.basis(0, 3))


class TestClassifyState:
    def test_input_equal_to_class_state(self, ket0, ket1):
        result = classify_state(model_of(ket0, ket1), ket0, 'trace')
        assert result.mode == HARD
        assert result.posteriors == (1.0, 0.0)
        assert result.decided == 0
        assert result.decided_name == 'c0'

    def test_closer_class_wins(self, ket0, ket1, plus):
        result = classify_state(model_of(ket0, plus), ket1, 'trace')
        assert result.decided == 1
        assert result.scores == pytest.approx((1.0, 1 / math.sqrt(2)), abs=1e-10)

    def test_tie_goes_to_lowest_index(self, ket0, ket1, mixed):
        for metric in ('trace', 'fidelity', 'hs'):
            assert classify_state(model_of(ket0, ket1), mixed, metric).decided == 0

    def test_fidelity_prefers_larger(self, ket0, ket1, plus):
        result = classify_state(model_of(ket1, plus), ket0, 'fidelity')
        assert result.decided == 1
        assert result.metric == 'fidelity'

    def test_empty_model(self, ket0):
        with pytest.raises(EmptyModelError):
            classify_state(ClassModel(()), ket0, 'trace')

    def test_dimension_mismatch(self, ket0, ket1):
        with pytest.raises(DimensionMismatchError):
            classify_state(model_of(ket0, ket1), DensityOperator.basis(0, 3), 'trace')

    def test_unknown_metric(self, ket0, ket1):
        with pytest.raises(ValidationError):
            classify_state(model_of(ket0, ket1), ket0, 'euclid')

    def test_unitary_invariance(self, rng):
        states = [random_density(3, rng) for _ in range(3)]
        rho = random_density(3, rng)
        u = np.asarray(tc.random_unitary(3, rng))

        def rotate(s: DensityOperator) -> DensityOperator:
            m = u @ np.asarray(s.matrix) @ u.conj().T
            return DensityOperator((m + m.conj().T) / 2)

        for metric in ('trace', 'fidelity', 'hs'):
            before = classify_state(model_of(*states), rho, metric)
            after = classify_state(model_of(*map(rotate, states)), rotate(rho), metric)
            assert before.decided == after.decided
            np.testing.assert_allclose(before.scores, after.scores, atol=1e-9)

    def test_batch_keeps_order(self, ket0, ket1):
        results = classify_batch(model_of(ket0, ket1), [ket1, ket0, ket1], 'hs')
        assert [r.decided for r in results] == [1, 0, 1]


class TestClassifySamples:
    def test_posterior_from_counts(self, ket0, plus):
        result = classify_samples(model_of(ket0, plus), PovmMeasurement.computational(2), {'0': 2})
        assert result.mode == SOFT
        assert result.posteriors == pytest.approx((0.8, 0.2), abs=1e-12)
        assert result.decided == 0

    def test_excluded_class(self, ket0, plus):
        result = classify_samples(model_of(ket0, plus), PovmMeasurement.computational(2), {'1': 1})
        assert result.posteriors == pytest.approx((0.0, 1.0), abs=1e-12)

    def test_single_class(self, plus):
        result = classify_samples(model_of(plus), PovmMeasurement.computational(2), {'0': 3, '1': 4})
        assert result.posteriors == (1.0,)

    def test_all_zero_likelihood(self, ket0):
        with pytest.raises(ZeroLikelihoodError):
            classify_samples(model_of(ket0, ket0), PovmMeasurement.computational(2), {'1': 1})

    def test_large_counts_do_not_underflow(self, ket0, plus):
        result = classify_samples(model_of(plus, ket0), PovmMeasurement.computational(2), {'0': 5000, '1': 5000})
        assert result.posteriors == pytest.approx((1.0, 0.0))

    def test_invalid_counts(self, ket0, plus):
        m = PovmMeasurement.computational(2)
        with pytest.raises(ValidationError):
            classify_samples(model_of(ket0, plus), m, {})
        with pytest.raises(ValidationError):
            classify_samples(model_of(ket0, plus), m, {'7': 1})

    def test_outcome_order_irrelevant(self, rng):
        model = model_of(random_density(3, rng), random_density(3, rng))
        m = PovmMeasurement.computational(3)
        a = classify_samples(model, m, {'0': 3, '1': 5, '2': 1})
        b = classify_samples(model, m, {'2': 1, '0': 3, '1': 5})
        assert a.posteriors == pytest.approx(b.posteriors, abs=1e-15)

    def test_agrees_with_classical_classifier(self):
        rng = make_rng(2024)
        labels = ('0', '1', '2')
        for _ in range(50):
            dists = [rng.dirichlet(np.ones(3)) for _ in range(2)]
            priors = rng.dirichlet(np.ones(2))
            outcome = labels[int(rng.integers(3))]
            quantum = model_of(*(DensityOperator(np.diag(p)) for p in dists), priors=list(priors))
            classical = ClassicalClassModel(tuple(
                ClassicalClass(f'c{i}', float(priors[i]), dict(zip(labels, map(float, p))))
                for i, p in enumerate(dists)))
            q = classify_samples(quantum, PovmMeasurement.computational(3), {outcome: 1})
            c = classical_classify(classical, outcome)
            np.testing.assert_allclose(q.posteriors, c.posteriors, atol=1e-10)
            assert q.decided == c.decided


class TestClassicalClassify:
    def make_model(self) -> ClassicalClassModel:
        return ClassicalClassModel((ClassicalClass('a', 0.5, {'x': 0.9, 'y': 0.1}),
                                    ClassicalClass('b', 0.5, {'x': 0.1, 'y': 0.9})))

    def test_bayes_posterior(self):
        result = classical_classify(self.make_model(), 'x')
        assert result.posteriors == pytest.approx((0.9, 0.1))
        assert result.decided_name == 'a'

    def test_unknown_symbol(self):
        with pytest.raises(UnknownSymbolError):
            classical_classify(self.make_model(), 'z')

    def test_zero_likelihood(self):
        model = ClassicalClassModel((ClassicalClass('a', 1.0, {'x': 1.0}),
                                     ClassicalClass('b', 0.0, {'y': 1.0})))
        with pytest.raises(ZeroLikelihoodError):
            classical_classify(model, 'y')

    def test_feature_vectors(self):
        model = fit_classical_model({'small': [FeatureVector((1.0, 2.0))] * 3,
                                     'large': [(5.0, 6.0), (1.0, 2.0)]})
        assert model.classes[0].prior == pytest.approx(0.6)
        result = classical_classify(model, [1.0, 2.0])
        assert result.posteriors == pytest.approx((0.75, 0.25))


class TestReduceGlobal:
    def test_bell_marginal_is_improper(self, bell):
        reduced = reduce_global(bell, [2, 2], 0)
        np.testing.assert_allclose(reduced.matrix, np.eye(2) / 2, atol=1e-12)
        assert reduced.improper

    def test_product_state_is_proper(self, ket0, plus):
        glob = DensityOperator(tc.tensor_product(ket0.matrix, plus.matrix))
        reduced = reduce_global(glob, [2, 2], 1)
        np.testing.assert_allclose(reduced.matrix, plus.matrix, atol=1e-12)
        assert not reduced.improper

    def test_classically_correlated_state_is_proper(self):
        glob = DensityOperator(np.diag([0.1, 0.2, 0.3, 0.4]))
        reduced = reduce_global(glob, [2, 2], 0)
        np.testing.assert_allclose(reduced.matrix, np.diag([0.3, 0.7]), atol=1e-12)
        assert not reduced.improper

    def test_ghz_marginal_is_improper(self):
        ghz = DensityOperator.from_vector(np.eye(8)[0] + np.eye(8)[7])
        for k in range(3):
            reduced = reduce_global(ghz, [2, 2, 2], k)
            np.testing.assert_allclose(reduced.matrix, np.eye(2) / 2, atol=1e-12)
            assert reduced.improper

    def test_entangled_pure_states_are_improper(self, rng):
        for _ in range(20):
            v = rng.normal(size=6) + 1j * rng.normal(size=6)
            glob = DensityOperator.from_vector(v)
            assert reduce_global(glob, [2, 3], 1).improper

    def test_bad_dims(self, bell):
        with pytest.raises(DimensionMismatchError):
            reduce_global(bell, [2, 3], 0)


class TestFitModels:
    def test_fit_class_model(self, ket0, ket1, plus):
        model = fit_class_model({'z': [ket0, ket1], 'x': [plus]})
        assert model.names == ('z', 'x')
        assert model.priors == (0.5, 0.5)
        np.testing.assert_allclose(build_class_state(model.classes[0].members).matrix, np.eye(2) / 2, atol=1e-12)

    def test_empty_class(self, ket0):
        with pytest.raises(ValidationError):
            fit_class_model({'z': [ket0], 'x': []})
