"""JSON wire formats."""

import numpy as np
import pytest

from minsep import serialize
from minsep.bases import phase_point_operators
from minsep.decompositions import SeparableDecomposition
from minsep.schmidt import operator_schmidt
from minsep.states import bell_state, projective_povm, random_density


class TestMatrix:
    def test_round_trip(self):
        rng = np.random.default_rng(0)
        m = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
        decoded = serialize.decode_matrix(serialize.encode_matrix(m))
        np.testing.assert_array_equal(decoded, m)

    def test_missing_key_names_field(self):
        with pytest.raises(serialize.FormatError, match="matrix.entries: missing"):
            serialize.decode_matrix({"rows": 2, "cols": 2})

    def test_bad_entry_names_index(self):
        obj = serialize.encode_matrix(np.eye(2))
        obj["entries"][3] = [1.0]
        with pytest.raises(serialize.FormatError, match=r"entries\[3\]"):
            serialize.decode_matrix(obj)


class TestState:
    def test_round_trip(self):
        state = random_density(4, 2, 3)
        decoded = serialize.decode_state(serialize.encode_state(state))
        np.testing.assert_array_equal(decoded.rho, state.rho)
        assert (decoded.dA, decoded.dB) == (2, 3)

    def test_invalid_state_reports_field(self):
        obj = serialize.encode_state(bell_state())
        obj["entries"][0] = [5.0, 0.0]
        with pytest.raises(serialize.FormatError, match="state"):
            serialize.decode_state(obj)


class TestPovm:
    def test_round_trip(self):
        povm = projective_povm("y")
        decoded = serialize.decode_povm(serialize.encode_povm(povm))
        for a, b in zip(decoded.effects, povm.effects):
            np.testing.assert_array_equal(a, b)


class TestDecomposition:
    def test_round_trip_with_meta(self):
        from minsep.crossnorm import DiagonalScaling
        from minsep.decompositions import equal_norm_decomposition

        os = operator_schmidt(bell_state())
        dec = equal_norm_decomposition(os, DiagonalScaling.identity(4), np.eye(4, dtype=complex), 1.0)
        decoded = serialize.decode_decomposition(serialize.encode_decomposition(dec))
        np.testing.assert_allclose(decoded.p, dec.p)
        np.testing.assert_allclose(decoded.reconstruct(), dec.reconstruct(), atol=1e-12)
        assert decoded.meta.kind == "equal-norm"
        np.testing.assert_allclose(decoded.meta.c, dec.meta.c)

    def test_without_meta(self):
        ws = phase_point_operators().ops
        dec = SeparableDecomposition(np.full(4, 0.25), ws, tuple(w.T for w in ws))
        decoded = serialize.decode_decomposition(serialize.encode_decomposition(dec))
        assert decoded.meta is None

    def test_length_mismatch(self):
        obj = {"p": [1.0], "A": [], "B": [], "meta": None}
        with pytest.raises(serialize.FormatError, match="equal length"):
            serialize.decode_decomposition(obj)


class TestDumps:
    def test_sorted_and_newline_terminated(self):
        text = serialize.dumps({"b": 1, "a": [0.5]})
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith("\n")

    def test_byte_identical(self):
        obj = serialize.encode_state(random_density(7, 2, 2))
        assert serialize.dumps(obj) == serialize.dumps(obj)
