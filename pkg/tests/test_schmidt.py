"""Operator-Schmidt decomposition and its normalised separable form."""

import numpy as np
import pytest

from minsep.bases import pauli_basis
from minsep.core import realign
from minsep.schmidt import OperatorSchmidt, normalized_form, operator_schmidt, reconstruct
from minsep.states import bell_state, max_entangled, product_state, random_density

from test_core import singular_values_gram

DIMS = [(2, 2), (2, 3), (3, 3)]


def seeded_states(count, dims=DIMS):
    for dA, dB in dims:
        for seed in range(count):
            yield random_density(1000 * dA + 10 * dB + seed, dA, dB)


class TestSpectrum:
    def test_bell(self):
        os = operator_schmidt(bell_state())
        assert os.D == 4
        np.testing.assert_allclose(os.s, [0.5] * 4, atol=1e-12)
        assert abs(os.lambda_total - 2.0) < 1e-12
        # Independent oracle on the realignment.
        oracle = singular_values_gram(realign(bell_state().rho, 2, 2))
        np.testing.assert_allclose(os.s, oracle, atol=1e-10)

    def test_product_state_single_term(self):
        os = operator_schmidt(product_state(np.eye(2) / 2, np.eye(2) / 2))
        assert os.D == 1
        np.testing.assert_allclose(os.s, [0.5], atol=1e-14)

    def test_max_entangled_3(self):
        os = operator_schmidt(max_entangled(3))
        assert os.D == 9
        np.testing.assert_allclose(os.s, np.full(9, 1 / 3), atol=1e-12)
        assert abs(os.lambda_total - 3.0) < 1e-10
        oracle = singular_values_gram(realign(max_entangled(3).rho, 3, 3))
        np.testing.assert_allclose(os.s, oracle, atol=1e-10)

    def test_rank_matches_matrix_rank(self):
        for state in seeded_states(3):
            os = operator_schmidt(state)
            m = realign(state.rho, state.dA, state.dB)
            assert os.D == np.linalg.matrix_rank(m, tol=1e-10)

    def test_two_norm_preserved(self):
        for state in seeded_states(3):
            os = operator_schmidt(state)
            purity = np.real(np.trace(state.rho.conj().T @ state.rho))
            assert abs(np.sum(os.s**2) - purity) < 1e-9


class TestFrames:
    def test_orthonormal(self):
        for state in seeded_states(3):
            os = operator_schmidt(state)
            for frame in (os.X, os.Y):
                g = np.array([[np.vdot(a.reshape(-1), b.reshape(-1)) for b in frame] for a in frame])
                np.testing.assert_allclose(g, np.eye(os.D), atol=1e-9)

    def test_hermitian_for_hermitian_input(self):
        for state in seeded_states(2):
            os = operator_schmidt(state)
            assert os.hermitisable
            for x, y in zip(os.X, os.Y):
                np.testing.assert_allclose(x, x.conj().T, atol=1e-10)
                np.testing.assert_allclose(y, y.conj().T, atol=1e-10)

    def test_trace_identity_for_unit_trace_states(self):
        # tr(rho) = 1 forces sum_i s_i tr(X_i) tr(Y_i) = 1.
        for state in seeded_states(3):
            os = operator_schmidt(state)
            total = sum(
                si * np.trace(x) * np.trace(y) for si, x, y in zip(os.s, os.X, os.Y)
            )
            assert abs(total - 1.0) < 1e-9

    def test_bell_frame_is_pauli_up_to_sign(self):
        os = operator_schmidt(bell_state())
        paulis = pauli_basis().ops
        for x in os.X:
            scaled = np.sqrt(2) * x
            assert any(
                np.allclose(scaled, sgn * p, atol=1e-10)
                for p in paulis
                for sgn in (1, -1)
            )

    def test_deterministic(self):
        a = operator_schmidt(random_density(5, 2, 2))
        b = operator_schmidt(random_density(5, 2, 2))
        np.testing.assert_array_equal(a.s, b.s)
        for x1, x2 in zip(a.X, b.X):
            np.testing.assert_array_equal(x1, x2)


class TestReconstruct:
    def test_round_trip(self):
        for state in seeded_states(7, DIMS):
            os = operator_schmidt(state)
            np.testing.assert_allclose(reconstruct(os), state.rho, atol=1e-9)

    def test_bell_reconstructs(self):
        np.testing.assert_allclose(
            reconstruct(operator_schmidt(bell_state())), bell_state().rho, atol=1e-12
        )

    def test_single_term(self):
        x = np.eye(2, dtype=complex) / np.sqrt(2)
        os = OperatorSchmidt(2, 2, np.array([1.0]), (x,), (x,))
        np.testing.assert_allclose(reconstruct(os), np.eye(4) / 2, atol=1e-14)

    def test_non_hermitian_operator_path(self):
        rng = np.random.default_rng(11)
        op = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        os = operator_schmidt(op, dims=(2, 2))
        np.testing.assert_allclose(reconstruct(os), op, atol=1e-9)


class TestNormalizedForm:
    def test_bell_weights_and_operators(self):
        dec = normalized_form(operator_schmidt(bell_state()))
        np.testing.assert_allclose(dec.p, [0.25] * 4, atol=1e-12)
        paulis = pauli_basis().ops
        for a in dec.A:
            # sqrt(lambda) X_i with lambda = 2: exactly a signed Pauli.
            assert any(
                np.allclose(a, sgn * p, atol=1e-10) for p in paulis for sgn in (1, -1)
            )

    def test_product_state_single_weight(self):
        dec = normalized_form(operator_schmidt(product_state(np.eye(2) / 2, np.eye(2) / 2)))
        np.testing.assert_allclose(dec.p, [1.0], atol=1e-14)

    def test_weights_sum_to_one(self):
        for state in seeded_states(7):
            dec = normalized_form(operator_schmidt(state))
            assert abs(np.sum(dec.p) - 1.0) < 1e-12
            np.testing.assert_allclose(dec.reconstruct(), state.rho, atol=1e-9)


class TestValidation:
    def test_rejects_negative_cutoff(self):
        with pytest.raises(ValueError, match="nonnegative"):
            operator_schmidt(bell_state(), rank_cutoff=-1.0)

    def test_requires_dims_for_raw_operators(self):
        with pytest.raises(ValueError, match="dims"):
            operator_schmidt(np.eye(4) / 4)

    def test_rejects_increasing_s(self):
        x = np.eye(2, dtype=complex) / np.sqrt(2)
        with pytest.raises(ValueError, match="nonincreasing"):
            OperatorSchmidt(2, 2, np.array([0.5, 1.0]), (x, x), (x, x))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="shape"):
            operator_schmidt(np.eye(4) / 4, dims=(2, 3))

    def test_outputs_immutable(self):
        os = operator_schmidt(bell_state())
        with pytest.raises(ValueError):
            os.s[0] = 1.0
        with pytest.raises(ValueError):
            os.X[0][0, 0] = 1.0
