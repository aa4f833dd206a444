"""Tests for nkpr.domain.tensor_core and nkpr.models.matrix."""
from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.linalg

from nkpr.domain import tensor_core as tc
from nkpr.domain.quantum_objects import PAULI_X, PAULI_Z
from nkpr.errors import DimensionMismatchError, FunctionDomainError, NotHermitianError, ValidationError
from nkpr.models.matrix import as_matrix


class TestAsMatrix:
    def test_rejects_non_finite(self):
        with pytest.raises(ValidationError):
            as_matrix([[1.0, np.nan], [0.0, 1.0]])

    def test_rejects_vector(self):
        with pytest.raises(ValidationError):
            as_matrix([1.0, 2.0])

    def test_result_is_read_only(self):
        m = as_matrix([[1, 2], [3, 4]])
        assert m.dtype == np.complex128
        with pytest.raises(ValueError):
            m[0, 0] = 5


class TestTensorProduct:
    def test_identities(self):
        np.testing.assert_array_equal(tc.tensor_product(tc.identity(2), tc.identity(2)), np.eye(4))

    def test_diagonal_factors(self):
        out = tc.tensor_product(as_matrix(np.diag([1, 0])), as_matrix(np.diag([0, 1])))
        np.testing.assert_array_equal(out, np.diag([0, 1, 0, 0]))

    def test_basis_projectors(self):
        p0 = as_matrix(np.diag([1, 0]))
        out = tc.tensor_product(p0, p0)
        expected = np.zeros((4, 4))
        expected[0, 0] = 1
        np.testing.assert_array_equal(out, expected)

    def test_rectangular_shape(self):
        out = tc.tensor_product(as_matrix(np.ones((2, 3))), as_matrix(np.ones((1, 2))))
        assert out.shape == (2, 6)

    def test_trace_multiplicative_and_associative(self, rng):
        a, b, c = (tc.random_hermitian(d, rng) for d in (2, 3, 2))
        ab = tc.tensor_product(a, b)
        assert np.trace(ab) == pytest.approx(np.trace(a) * np.trace(b))
        np.testing.assert_array_equal(tc.tensor_product(ab, c), tc.tensor_product(a, tc.tensor_product(b, c)))


class TestPartialTrace:
    def test_product_state(self, rng):
        a = np.diag([0.3, 0.7])
        b = np.array([[0.5, 0.5], [0.5, 0.5]])
        out = tc.partial_trace(tc.tensor_product(as_matrix(a), as_matrix(b)), [2, 2], {0})
        np.testing.assert_allclose(out, a, atol=1e-12)

    def test_bell_marginal(self, bell):
        np.testing.assert_allclose(tc.partial_trace(bell.matrix, [2, 2], {0}), np.eye(2) / 2, atol=1e-12)
        np.testing.assert_allclose(tc.partial_trace(bell.matrix, [2, 2], {1}), np.eye(2) / 2, atol=1e-12)

    def test_diagonal_by_hand(self):
        m = as_matrix(np.diag([0.1, 0.2, 0.3, 0.4]))
        np.testing.assert_allclose(tc.partial_trace(m, [2, 2], {1}), np.diag([0.4, 0.6]), atol=1e-12)

    def test_all_factors_gives_scalar_trace(self, rng):
        m = tc.random_hermitian(6, rng)
        out = tc.partial_trace(m, [2, 3], [])
        assert out.shape == (1, 1)
        assert out[0, 0] == pytest.approx(np.trace(m))

    def test_trace_preserved(self, rng):
        m = tc.random_hermitian(12, rng)
        out = tc.partial_trace(m, [2, 3, 2], {0, 2})
        assert out.shape == (4, 4)
        assert np.trace(out) == pytest.approx(np.trace(m), abs=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            tc.partial_trace(tc.identity(4), [2, 3], {0})

    def test_index_out_of_range(self):
        with pytest.raises(DimensionMismatchError):
            tc.partial_trace(tc.identity(4), [2, 2], {2})


class TestPartialTranspose:
    def test_bell_gives_half_swap(self, bell):
        swap = np.eye(4)[[0, 2, 1, 3]]
        for factor in (0, 1):
            out = tc.partial_transpose(bell.matrix, [2, 2], factor)
            np.testing.assert_allclose(out, swap / 2, atol=1e-12)
        assert np.linalg.eigvalsh(swap / 2)[0] == pytest.approx(-0.5)

    def test_product_transposes_one_factor(self, rng):
        a = tc.random_hermitian(2, rng) + 1j * tc.random_hermitian(2, rng)
        b = tc.random_hermitian(3, rng) + 1j * tc.random_hermitian(3, rng)
        out = tc.partial_transpose(tc.tensor_product(as_matrix(a), as_matrix(b)), [2, 3], 1)
        np.testing.assert_allclose(out, np.kron(a, b.T), atol=1e-12)

    def test_involution(self, rng):
        m = tc.random_hermitian(12, rng)
        twice = tc.partial_transpose(tc.partial_transpose(m, [2, 3, 2], 1), [2, 3, 2], 1)
        np.testing.assert_allclose(twice, m, atol=1e-12)

    def test_bad_dims(self):
        with pytest.raises(DimensionMismatchError):
            tc.partial_transpose(tc.identity(4), [2, 3], 0)
        with pytest.raises(DimensionMismatchError):
            tc.partial_transpose(tc.identity(4), [2, 2], 2)


class TestEigenHermitian:
    def test_diagonal(self):
        s = tc.eigen_hermitian(as_matrix(np.diag([3.0, 1.0])))
        np.testing.assert_allclose(s.eigenvalues, [3.0, 1.0])
        np.testing.assert_allclose(s.eigenvectors, np.eye(2), atol=1e-12)

    def test_pauli_x(self):
        s = tc.eigen_hermitian(PAULI_X)
        np.testing.assert_allclose(s.eigenvalues, [1.0, -1.0], atol=1e-12)
        h = 1 / math.sqrt(2)
        np.testing.assert_allclose(s.eigenvectors, [[h, h], [h, -h]], atol=1e-12)

    def test_identity_is_deterministic(self):
        s = tc.eigen_hermitian(tc.identity(3))
        np.testing.assert_allclose(s.eigenvalues, [1.0, 1.0, 1.0])
        again = tc.eigen_hermitian(tc.identity(3))
        np.testing.assert_array_equal(s.eigenvectors, again.eigenvectors)

    def test_reconstruction_and_unitarity(self, rng):
        for d in (2, 3, 5, 8):
            m = tc.random_hermitian(d, rng)
            s = tc.eigen_hermitian(m)
            assert np.all(np.diff(s.eigenvalues) <= 0)
            v = np.asarray(s.eigenvectors)
            assert np.linalg.norm(s.reassemble() - m) <= 1e-9 * np.linalg.norm(m)
            assert np.linalg.norm(v.conj().T @ v - np.eye(d)) <= 1e-9

    def test_not_hermitian(self):
        with pytest.raises(NotHermitianError):
            tc.eigen_hermitian(as_matrix([[1, 1], [0, 1]]))

    def test_round_off_is_symmetrized(self):
        m = as_matrix([[1.0, 0.5 + 1e-14], [0.5, 2.0]])
        s = tc.eigen_hermitian(m)
        assert s.eigenvalues.dtype == np.float64


class TestHermitianFunction:
    def test_exp_of_zero(self):
        np.testing.assert_allclose(tc.hermitian_function(as_matrix(np.zeros((2, 2))), math.exp), np.eye(2))

    def test_exp_diagonal(self):
        out = tc.hermitian_function(as_matrix(np.diag([0.0, math.log(2)])), math.exp)
        np.testing.assert_allclose(out, np.diag([1.0, 2.0]), atol=1e-12)

    def test_sqrt_diagonal(self):
        out = tc.hermitian_function(as_matrix(np.diag([4.0, 9.0])), math.sqrt)
        np.testing.assert_allclose(out, np.diag([2.0, 3.0]), atol=1e-12)

    def test_identity_map_and_commutation(self, rng):
        m = tc.random_hermitian(4, rng)
        np.testing.assert_allclose(tc.hermitian_function(m, lambda x: x), m, atol=1e-10)
        f = np.asarray(tc.hermitian_function(m, math.exp))
        assert np.linalg.norm(f @ m - m @ f) <= 1e-9 * np.linalg.norm(f)

    def test_matches_scipy_expm(self, rng):
        m = tc.random_hermitian(3, rng)
        np.testing.assert_allclose(tc.hermitian_function(m, math.exp), scipy.linalg.expm(m), rtol=1e-9, atol=1e-9)

    def test_function_undefined(self):
        with pytest.raises(FunctionDomainError):
            tc.hermitian_function(as_matrix(np.diag([1.0, -1.0])), math.log)


class TestFrobeniusInner:
    def test_examples(self):
        assert tc.frobenius_inner(tc.identity(2), tc.identity(2)) == pytest.approx(2.0)
        assert tc.frobenius_inner(as_matrix(np.diag([1, 0])), as_matrix(np.diag([0, 1]))) == 0
        assert tc.frobenius_inner(PAULI_X, PAULI_Z) == 0

    def test_conjugate_symmetric(self, rng):
        a = as_matrix(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        b = as_matrix(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        assert tc.frobenius_inner(a, b) == pytest.approx(np.conj(tc.frobenius_inner(b, a)))

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            tc.frobenius_inner(tc.identity(2), tc.identity(3))


class TestRandomUnitary:
    def test_unitary(self, rng):
        u = np.asarray(tc.random_unitary(4, rng))
        np.testing.assert_allclose(u.conj().T @ u, np.eye(4), atol=1e-12)
