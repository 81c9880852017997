"""Tests for states, bases and MUB-set construction."""

import cmath
import math
from itertools import combinations

import numpy as np
import pytest

from eurlab.exceptions import DimensionError, InvalidStateError, SelectionError
from eurlab.qstate import (
    Basis,
    MubSet,
    PureState,
    basis_state,
    build_computational_basis,
    build_full_mub_set,
    check_mutually_unbiased,
    full_set_labels,
    random_state,
    select_subset,
)


class TestPureState:
    def test_norm_enforced(self):
        with pytest.raises(InvalidStateError):
            PureState(dim=3, amplitudes=np.array([1.0, 1.0, 0.0]))

    def test_dim_mismatch(self):
        with pytest.raises(DimensionError):
            PureState(dim=4, amplitudes=np.array([1.0, 0.0, 0.0]))

    def test_normalized_constructor(self):
        state = PureState.normalized([3.0, 4.0j, 0.0])
        assert np.isclose(np.linalg.norm(state.amplitudes), 1.0, atol=1e-12)
        assert np.isclose(abs(state.amplitudes[1]), 0.8)

    def test_immutable(self):
        state = basis_state(3, 0)
        with pytest.raises(ValueError):
            state.amplitudes[0] = 0.0

    def test_fidelity_phase_invariant(self):
        psi = random_state(4, 5)
        rotated = PureState(dim=4, amplitudes=psi.amplitudes * np.exp(0.7j))
        assert np.isclose(psi.fidelity(rotated), 1.0, atol=1e-12)

    def test_polar_decomposition(self):
        psi = PureState.normalized([1.0, 1j, -1.0])
        assert np.allclose(psi.moduli, 1 / math.sqrt(3))
        assert np.isclose(psi.phases[1], math.pi / 2)


class TestComputationalBasis:
    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_identity(self, d):
        basis = build_computational_basis(d)
        assert basis.label == "A"
        assert np.array_equal(basis.matrix, np.eye(d, dtype=complex))

    def test_columns_are_basis_states(self):
        basis = build_computational_basis(3)
        assert np.array_equal(basis.column(1).amplitudes, [0, 1, 0])

    def test_unsupported_dimension(self):
        with pytest.raises(DimensionError):
            build_computational_basis(6)
        with pytest.raises(DimensionError):
            build_computational_basis(2)


class TestFullMubSet:
    @pytest.mark.parametrize("d,count", [(3, 4), (4, 5), (5, 6)])
    def test_set_sizes(self, d, count):
        full = build_full_mub_set(d)
        assert full.size == count
        assert full.labels == full_set_labels(d)

    def test_d3_second_basis_column(self):
        # column 1 of B is (1, w, w^2)/sqrt(3) with w = exp(2i*pi/3)
        w = cmath.exp(2j * cmath.pi / 3)
        expected = np.array([1.0, w, w**2]) / math.sqrt(3)
        col = build_full_mub_set(3).basis("B").column(1)
        assert np.allclose(col.amplitudes, expected, atol=1e-15)

    def test_d4_c_matrix_third_row(self):
        # third row of C reads (-i, i, i, -i)/2
        row = build_full_mub_set(4).basis("C").matrix[2]
        assert np.allclose(row, np.array([-1j, 1j, 1j, -1j]) / 2, atol=1e-15)

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_all_pairs_unbiased(self, d):
        full = build_full_mub_set(d)
        target = 1 / math.sqrt(d)
        for b1, b2 in combinations(full.bases, 2):
            overlaps = np.abs(b1.matrix.conj().T @ b2.matrix)
            assert np.max(np.abs(overlaps - target)) < 1e-10, (b1.label, b2.label)

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_all_bases_unitary(self, d):
        for basis in build_full_mub_set(d).bases:
            gram = basis.matrix.conj().T @ basis.matrix
            assert np.max(np.abs(gram - np.eye(d))) < 1e-12

    def test_invalid_basis_rejected(self):
        mat = np.eye(3, dtype=complex)
        mat = mat.copy()
        mat[0, 0] = 0.9
        with pytest.raises(InvalidStateError):
            Basis(dim=3, label="B", matrix=mat)


class TestSelectSubset:
    def test_order_preserved(self):
        full = build_full_mub_set(3)
        sub = select_subset(full, ["C", "A", "B"])
        assert sub.labels == ("C", "A", "B")

    def test_d4_triple_excluding_a(self):
        sub = select_subset(build_full_mub_set(4), ["B", "C", "D"])
        assert sub.labels == ("B", "C", "D")
        assert sub.size == 3

    def test_duplicate_label(self):
        full = build_full_mub_set(3)
        with pytest.raises(SelectionError):
            select_subset(full, ["A", "A"])

    def test_unknown_label(self):
        full = build_full_mub_set(3)
        with pytest.raises(SelectionError):
            select_subset(full, ["A", "F"])

    def test_single_basis_rejected(self):
        full = build_full_mub_set(3)
        with pytest.raises(SelectionError):
            select_subset(full, ["A"])


class TestCheckMutuallyUnbiased:
    def test_unbiased_pair(self):
        full = build_full_mub_set(3)
        result = check_mutually_unbiased(full.basis("A"), full.basis("B"))
        assert result.unbiased
        assert result.max_deviation < 1e-12

    def test_self_comparison(self):
        basis = build_computational_basis(3)
        result = check_mutually_unbiased(basis, basis)
        assert not result.unbiased

    def test_d5_a_d_pair(self):
        full = build_full_mub_set(5)
        assert check_mutually_unbiased(full.basis("A"), full.basis("D")).unbiased

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            check_mutually_unbiased(build_computational_basis(3), build_computational_basis(4))


class TestRandomState:
    def test_deterministic(self):
        s1 = random_state(3, seed=42)
        s2 = random_state(3, seed=42)
        assert np.array_equal(s1.amplitudes, s2.amplitudes)

    def test_different_seeds_differ(self):
        assert random_state(3, 1).fidelity(random_state(3, 2)) < 0.999999

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_normalized(self, d):
        for seed in range(20):
            state = random_state(d, seed)
            assert abs(np.sum(np.abs(state.amplitudes) ** 2) - 1.0) < 1e-12


class TestSerialization:
    def test_state_round_trip(self):
        psi = random_state(5, 3)
        again = PureState.from_dict(psi.to_dict())
        assert np.allclose(psi.amplitudes, again.amplitudes, atol=1e-15)

    def test_mub_set_json_round_trip(self):
        full = build_full_mub_set(4)
        again = MubSet.from_json(full.to_json())
        assert again.labels == full.labels
        for b1, b2 in zip(full.bases, again.bases):
            assert np.allclose(b1.matrix, b2.matrix, atol=1e-15)

    def test_complex_entries_as_pairs(self):
        data = build_full_mub_set(3).basis("B").to_dict()
        entry = data["matrix"][1][1]
        assert isinstance(entry, list) and len(entry) == 2
