"""Tests for nkpr.domain.quantum_objects and the state models."""
from __future__ import annotations

import math

import numpy as np
import pytest

from nkpr.domain import tensor_core as tc
from nkpr.domain.channels import bit_flip_channel, depolarizing_channel, identity_channel
from nkpr.domain.quantum_objects import (
    apply_channel,
    bloch_vector,
    born_probability,
    fidelity,
    from_bloch,
    gibbs_state,
    hs_distance,
    kms_residual,
    linear_entropy,
    mixture,
    random_density,
    renyi_entropy,
    sample_measurement,
    trace_distance,
    von_neumann_entropy,
)
from nkpr.domain.rng import make_rng
from nkpr.errors import DimensionMismatchError, ValidationError, WeightNormalizationError
from nkpr.models.matrix import as_matrix
from nkpr.models.states import DensityOperator, Effect, PovmMeasurement, Projection, QuantumChannel

INV_SQRT2 = 1 / math.sqrt(2)


class TestDensityOperator:
    def test_rejects_bad_trace(self):
        with pytest.raises(ValidationError):
            DensityOperator(np.diag([0.5, 0.4]))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(ValidationError):
            DensityOperator(np.diag([1.1, -0.1]))

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValidationError):
            DensityOperator([[0.5, 0.5], [0.0, 0.5]])

    def test_round_off_negativity_accepted(self):
        rho = DensityOperator(np.diag([1.0 + 5e-11, -5e-11]))
        assert rho.dim == 2

    def test_projection_idempotence(self):
        with pytest.raises(ValidationError):
            Projection(np.diag([1.0, 0.5]))

    def test_effect_range(self):
        Effect(np.diag([1.0, 0.0]))
        with pytest.raises(ValidationError):
            Effect(np.diag([1.2, 0.0]))

    def test_channel_trace_preservation(self):
        with pytest.raises(ValidationError):
            QuantumChannel((np.diag([1.0, 0.5]),))

    def test_povm_completeness(self):
        with pytest.raises(ValidationError):
            PovmMeasurement((np.diag([1.0, 0.0]), np.diag([0.0, 0.5])))


class TestBornProbability:
    def test_examples(self, ket0, plus, mixed):
        p0 = Projection(np.diag([1.0, 0.0]))
        assert born_probability(ket0, p0) == 1.0
        assert born_probability(plus, p0) == pytest.approx(0.5, abs=1e-12)
        assert born_probability(mixed, Projection.identity(2)) == pytest.approx(1.0, abs=1e-12)

    def test_dimension_mismatch(self, ket0):
        with pytest.raises(DimensionMismatchError):
            born_probability(ket0, Projection.identity(3))

    def test_additive_over_orthogonal_projections(self, rng):
        rho = random_density(3, rng)
        u = np.asarray(tc.random_unitary(3, rng))
        p = Projection.onto(u[:, [0]])
        q = Projection.onto(u[:, [1, 2]])
        both = Projection(np.asarray(p.matrix) + np.asarray(q.matrix))
        assert born_probability(rho, both) == pytest.approx(born_probability(rho, p) + born_probability(rho, q),
                                                            abs=1e-12)


class TestMixture:
    def test_examples(self, ket0, ket1):
        np.testing.assert_allclose(mixture([ket0, ket1], [0.5, 0.5]).matrix, np.eye(2) / 2)
        np.testing.assert_allclose(mixture([ket0, ket1], [1.0, 0.0]).matrix, ket0.matrix)
        np.testing.assert_allclose(mixture([ket0, ket1], [0.25, 0.75]).matrix, np.diag([0.25, 0.75]))

    def test_weights_must_normalize(self, ket0, ket1):
        with pytest.raises(WeightNormalizationError):
            mixture([ket0, ket1], [0.5, 0.6])
        with pytest.raises(WeightNormalizationError):
            mixture([ket0, ket1], [1.5, -0.5])

    def test_dimension_mismatch(self, ket0):
        with pytest.raises(DimensionMismatchError):
            mixture([ket0, DensityOperator.basis(0, 3)], [0.5, 0.5])


class TestMetrics:
    def test_trace_distance_examples(self, ket0, ket1, plus):
        assert trace_distance(ket0, ket0) == pytest.approx(0.0, abs=1e-12)
        assert trace_distance(ket0, ket1) == pytest.approx(1.0, abs=1e-12)
        assert trace_distance(ket0, plus) == pytest.approx(INV_SQRT2, abs=1e-10)

    def test_fidelity_examples(self, ket0, ket1, plus):
        assert fidelity(ket0, ket0) == pytest.approx(1.0, abs=1e-12)
        assert fidelity(ket0, ket1) == pytest.approx(0.0, abs=1e-12)
        assert fidelity(ket0, plus) == pytest.approx(INV_SQRT2, abs=1e-10)

    def test_hs_distance_examples(self, ket0, ket1):
        assert hs_distance(ket0.matrix, ket0.matrix) == 0.0
        assert hs_distance(ket0.matrix, ket1.matrix) == pytest.approx(math.sqrt(2))
        assert hs_distance(tc.identity(2), as_matrix(np.zeros((2, 2)))) == pytest.approx(math.sqrt(2))

    def test_dimension_mismatch(self, ket0):
        other = DensityOperator.basis(0, 3)
        for metric in (trace_distance, fidelity, hs_distance):
            with pytest.raises(DimensionMismatchError):
                metric(ket0, other)

    def test_fuchs_van_de_graaf(self):
        rng = make_rng(5)
        for _ in range(500):
            a, b = random_density(2, rng), random_density(2, rng)
            f, d = fidelity(a, b), trace_distance(a, b)
            assert 1 - f <= d + 1e-8
            assert d <= math.sqrt(max(0.0, 1 - f * f)) + 1e-8

    def test_symmetry(self, rng):
        a, b = random_density(3, rng), random_density(3, rng)
        assert trace_distance(a, b) == pytest.approx(trace_distance(b, a), abs=1e-12)
        assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-9)


class TestEntropy:
    def test_von_neumann_examples(self, ket0, mixed):
        assert von_neumann_entropy(ket0) == 0.0
        assert von_neumann_entropy(mixed) == pytest.approx(1.0, abs=1e-12)
        rho = DensityOperator(np.diag([0.25, 0.75]))
        assert von_neumann_entropy(rho) == pytest.approx(0.811278124459, abs=1e-9)

    def test_bounds(self, rng):
        for d in (2, 3, 4):
            s = von_neumann_entropy(random_density(d, rng))
            assert 0.0 <= s <= math.log2(d)

    def test_renyi_and_linear(self, ket0, mixed):
        assert renyi_entropy(mixed, 2.0) == pytest.approx(1.0, abs=1e-12)
        assert renyi_entropy(ket0, 2.0) == pytest.approx(0.0, abs=1e-12)
        assert renyi_entropy(mixed, 1.0) == von_neumann_entropy(mixed)
        assert linear_entropy(mixed) == pytest.approx(0.5, abs=1e-12)
        assert linear_entropy(ket0) == pytest.approx(0.0, abs=1e-12)

    def test_renyi_order_nonnegative(self, mixed):
        with pytest.raises(ValidationError):
            renyi_entropy(mixed, -1.0)


class TestApplyChannel:
    def test_identity(self, plus):
        np.testing.assert_allclose(apply_channel(identity_channel(2), plus).matrix, plus.matrix, atol=1e-12)

    def test_fully_depolarizing(self, rng):
        out = apply_channel(depolarizing_channel(1.0, 2), random_density(2, rng))
        np.testing.assert_allclose(out.matrix, np.eye(2) / 2, atol=1e-12)

    def test_bit_flip(self, ket0):
        out = apply_channel(bit_flip_channel(0.3), ket0)
        np.testing.assert_allclose(out.matrix, np.diag([0.7, 0.3]), atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            apply_channel(identity_channel(2), DensityOperator.basis(0, 3))

    def test_unital_channels_never_decrease_entropy(self, rng):
        for d in (2, 3):
            channel = depolarizing_channel(0.3, d)
            assert channel.is_unital()
            for _ in range(20):
                rho = random_density(d, rng)
                assert von_neumann_entropy(apply_channel(channel, rho)) >= von_neumann_entropy(rho) - 1e-9

    def test_linear_in_mixtures(self, rng):
        channel = bit_flip_channel(0.2)
        a, b = random_density(2, rng), random_density(2, rng)
        lhs = apply_channel(channel, mixture([a, b], [0.3, 0.7]))
        rhs = 0.3 * np.asarray(apply_channel(channel, a).matrix) + 0.7 * np.asarray(apply_channel(channel, b).matrix)
        np.testing.assert_allclose(lhs.matrix, rhs, atol=1e-10)


class TestGibbsState:
    def test_infinite_temperature(self, rng):
        h = tc.random_hermitian(3, rng)
        np.testing.assert_allclose(gibbs_state(h, 0.0).matrix, np.eye(3) / 3, atol=1e-12)

    def test_two_level(self):
        rho = gibbs_state(as_matrix(np.diag([0.0, 1.0])), math.log(2))
        np.testing.assert_allclose(rho.matrix, np.diag([2 / 3, 1 / 3]), atol=1e-12)

    def test_constant_hamiltonian(self):
        np.testing.assert_allclose(gibbs_state(tc.identity(4), 3.0).matrix, np.eye(4) / 4, atol=1e-12)

    def test_large_beta_does_not_overflow(self):
        rho = gibbs_state(as_matrix(np.diag([0.0, 1.0])), 1e4)
        np.testing.assert_allclose(rho.matrix, np.diag([1.0, 0.0]), atol=1e-12)

    def test_rejects_negative_beta(self):
        with pytest.raises(ValidationError):
            gibbs_state(tc.identity(2), -1.0)

    def test_kms_identity(self):
        rng = make_rng(8)
        h = tc.random_hermitian(3, rng)
        for _ in range(100):
            a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            assert kms_residual(h, 0.7, a, b) <= 1e-8


class TestSampleMeasurement:
    def test_deterministic_outcome(self, ket0):
        assert sample_measurement(ket0, PovmMeasurement.computational(2), 100, seed=3) == {'0': 100}

    def test_binomial_statistics(self, mixed):
        counts = sample_measurement(mixed, PovmMeasurement.computational(2), 10 ** 6, seed=11)
        assert sum(counts.values()) == 10 ** 6
        for label in ('0', '1'):
            assert abs(counts[label] - 500000) <= 3 * 500

    def test_zero_shots(self, mixed):
        assert sample_measurement(mixed, PovmMeasurement.computational(2), 0, seed=0) == {}

    def test_same_seed_same_counts(self, rng):
        rho = random_density(3, rng)
        m = PovmMeasurement.computational(3)
        assert sample_measurement(rho, m, 1000, seed=42) == sample_measurement(rho, m, 1000, seed=42)

    def test_dimension_mismatch(self, ket0):
        with pytest.raises(DimensionMismatchError):
            sample_measurement(ket0, PovmMeasurement.computational(3), 10, seed=0)


class TestBloch:
    def test_round_trip_of_plus(self, plus):
        np.testing.assert_allclose(bloch_vector(plus), [1.0, 0.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(from_bloch([1.0, 0.0, 0.0]).matrix, plus.matrix, atol=1e-12)

    def test_outside_ball(self):
        with pytest.raises(ValidationError):
            from_bloch([1.0, 1.0, 0.0])

    def test_north_pole(self, ket0):
        np.testing.assert_allclose(bloch_vector(ket0), [0.0, 0.0, 1.0], atol=1e-12)
