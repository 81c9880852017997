"""Tests for the optimal-state family generators and refinement."""

import math
from itertools import combinations

import numpy as np
import pytest

from eurlab.entropy import born_probabilities, entropy_sum
from eurlab.exceptions import RefinementRejectedError, SelectionError
from eurlab.minimizer import REFERENCE_MINIMA
from eurlab.optstates import (
    catalog_states,
    d5_family_records,
    external_eigenstates,
    family_records,
    internal_eigenstates,
    optimal_states_d3,
    optimal_states_d4_quadruple,
    optimal_states_d4_with_A,
    optimal_states_d4_without_A,
    optimal_states_d5,
    records_to_json_payload,
    refine_optimal_state,
    two_term_state,
)
from eurlab.qstate import PureState, build_full_mub_set, select_subset

FULL3 = build_full_mub_set(3)
FULL4 = build_full_mub_set(4)
FULL5 = build_full_mub_set(5)


class TestD3Family:
    def test_nine_members(self):
        states = optimal_states_d3()
        assert len(states) == 9
        for s1, s2 in combinations(states, 2):
            assert s1.fidelity(s2) < 0.999

    def test_pair_01_phase_pi(self):
        expected = np.array([1.0, -1.0, 0.0]) / math.sqrt(2)
        assert any(
            np.allclose(s.amplitudes, expected, atol=1e-12) for s in optimal_states_d3()
        )

    def test_saturates_full_set(self):
        for state in optimal_states_d3():
            report = entropy_sum(state, FULL3)
            assert abs(report.sum - 4.0) < 1e-9

    @pytest.mark.parametrize("labels", ["ABC", "ABD", "ACD", "BCD"])
    def test_saturates_every_triple(self, labels):
        sub = select_subset(FULL3, labels)
        for state in optimal_states_d3():
            assert abs(entropy_sum(state, sub).sum - 3.0) < 1e-9

    def test_normalized(self):
        for state in optimal_states_d3():
            assert abs(np.sum(state.moduli**2) - 1.0) < 1e-12


class TestD4WithA:
    def test_abc_parameters(self):
        got = {
            (spec.parameter_dict()["j1"], spec.parameter_dict()["j2"], spec.parameter_dict()["phase_pi"])
            for spec, _ in family_records(4, "ABC")
        }
        assert got == {(0, 1, "0"), (0, 1, "1"), (2, 3, "0"), (2, 3, "1")}

    def test_acd_phases(self):
        got = {
            (spec.parameter_dict()["j1"], spec.parameter_dict()["j2"], spec.parameter_dict()["phase_pi"])
            for spec, _ in family_records(4, "ACD")
        }
        assert got == {(0, 3, "1/2"), (0, 3, "-1/2"), (1, 2, "1/2"), (1, 2, "-1/2")}

    @pytest.mark.parametrize("labels", ["ABC", "ABD", "ABE", "ACD", "ACE", "ADE"])
    def test_saturation(self, labels):
        sub = select_subset(FULL4, labels)
        states = optimal_states_d4_with_A(labels)
        assert len(states) == 4
        for state in states:
            assert abs(entropy_sum(state, sub).sum - 3.0) < 1e-9

    def test_unknown_triple(self):
        with pytest.raises(SelectionError):
            optimal_states_d4_with_A("BCD")


class TestD4WithoutA:
    def test_cde_phase_triples(self):
        got = {spec.parameter_dict()["phases_pi"] for spec, _ in family_records(4, "CDE")}
        assert got == {("1", "0", "0"), ("0", "1", "0"), ("0", "0", "1"), ("1", "1", "1")}

    def test_bcd_first_row(self):
        fracs = [spec.parameter_dict()["phases_pi"] for spec, _ in family_records(4, "BCD")]
        assert fracs[0] == ("1/2", "1/2", "0")

    @pytest.mark.parametrize("labels", ["BCD", "BCE", "BDE", "CDE"])
    def test_saturation(self, labels):
        sub = select_subset(FULL4, labels)
        states = optimal_states_d4_without_A(labels)
        assert len(states) == 4
        for state in states:
            assert abs(entropy_sum(state, sub).sum - 3.0) < 1e-9

    def test_equal_moduli(self):
        for state in optimal_states_d4_without_A("BDE"):
            assert np.allclose(state.moduli, 0.5, atol=1e-12)

    def test_two_term_in_some_basis(self):
        # each equal-modulus optimizer is a two-term superposition in one of
        # the five bases: some Born distribution has exactly two 1/2 entries
        for state in (
            s for labels in ("BCD", "BCE", "BDE", "CDE") for s in optimal_states_d4_without_A(labels)
        ):
            found = False
            for basis in FULL4.bases:
                p = np.sort(born_probabilities(state, basis).probs)
                if np.allclose(p, [0.0, 0.0, 0.5, 0.5], atol=1e-9):
                    found = True
                    break
            assert found

    def test_unknown_triple(self):
        with pytest.raises(SelectionError):
            optimal_states_d4_without_A("ABC")


class TestD4Quadruples:
    def test_abcd_union(self):
        states = optimal_states_d4_quadruple("ABCD")
        assert len(states) == 16
        for source in ("ABC", "ABD", "ACD"):
            for s in optimal_states_d4_with_A(source):
                assert any(s.fidelity(q) > 1 - 1e-12 for q in states)
        for s in optimal_states_d4_without_A("BCD"):
            assert any(s.fidelity(q) > 1 - 1e-12 for q in states)

    def test_bcde_includes_cde(self):
        states = optimal_states_d4_quadruple("BCDE")
        for s in optimal_states_d4_without_A("CDE"):
            assert any(s.fidelity(q) > 1 - 1e-12 for q in states)

    @pytest.mark.parametrize("labels", ["ABCD", "ABCE", "ABDE", "ACDE", "BCDE"])
    def test_saturation(self, labels):
        sub = select_subset(FULL4, labels)
        for state in optimal_states_d4_quadruple(labels):
            assert abs(entropy_sum(state, sub).sum - 5.0) < 1e-9

    def test_unknown_quadruple(self):
        with pytest.raises(SelectionError):
            optimal_states_d4_quadruple("ABCF")


class TestD5Families:
    def test_m3_internal_eigenstates(self):
        states = optimal_states_d5(3)
        assert len(states) == 15
        sub = select_subset(FULL5, "ABC")
        for state in states:
            report = entropy_sum(state, sub, variant="class1")
            assert abs(report.sum - 2 * math.log2(5)) < 1e-9

    def test_m6_two_term(self):
        states = optimal_states_d5(6)
        assert len(states) == 50
        probe = two_term_state(5, 0, 1, math.pi / 5)
        assert any(probe.fidelity(s) > 1 - 1e-12 for s in states)
        for state in states[::7]:
            assert abs(entropy_sum(state, FULL5).sum - 10.25) < 5e-3

    @pytest.mark.parametrize("m,key", [(4, (5, 4, "unique")), (5, (5, 5, "unique"))])
    def test_refined_families_hit_reference_minimum(self, m, key):
        sub = select_subset(FULL5, "ABCDEF"[:m])
        states = optimal_states_d5(m)
        assert len(states) == 50
        for state in states:
            assert abs(entropy_sum(state, sub).sum - REFERENCE_MINIMA[key]) < 1e-9

    @pytest.mark.parametrize("m", [4, 5])
    def test_one_null_pairwise_equal_structure(self, m):
        for state in optimal_states_d5(m):
            moduli = np.sort(state.moduli)
            assert moduli[0] < 1e-9  # exactly one null coefficient
            assert moduli[1] > 1e-3
            assert abs(moduli[1] - moduli[2]) < 1e-12
            assert abs(moduli[3] - moduli[4]) < 1e-12
            assert moduli[3] - moduli[2] > 0.1  # two distinct modulus values

    @pytest.mark.parametrize("m", [3, 4, 5, 6])
    def test_normalization(self, m):
        for state in optimal_states_d5(m):
            assert abs(np.sum(state.moduli**2) - 1.0) < 1e-12

    def test_unsupported_m(self):
        with pytest.raises(SelectionError):
            optimal_states_d5(2)

    def test_records_payload(self):
        payload = records_to_json_payload(d5_family_records(4))
        assert len(payload) == 50
        assert payload[0]["parameters"]["null_index"] == 0
        assert len(payload[0]["amplitudes"]) == 5


class TestCatalog:
    def test_m2_eigenstates(self):
        states = catalog_states(3, ("A", "B"))
        assert len(states) == 6

    def test_d4_full_set_states(self):
        states = catalog_states(4, tuple("ABCDE"))
        assert len(states) == 40
        for state in states:
            assert abs(entropy_sum(state, FULL4).sum - 7.0) < 1e-9

    def test_class2_triple_has_no_closed_form(self):
        assert catalog_states(5, ("A", "B", "D")) == []

    def test_class1_triple_eigenstates(self):
        assert len(catalog_states(5, ("A", "B", "C"))) == 15

    def test_d5_other_quadruple_empty(self):
        assert catalog_states(5, ("A", "B", "C", "E")) == []


class TestEigenstateEnumeration:
    def test_internal(self):
        sub = select_subset(FULL3, "ABC")
        tagged = internal_eigenstates(sub)
        assert len(tagged) == 9
        assert tagged[0][0] == "A0"

    def test_external(self):
        sub = select_subset(FULL3, "ABC")
        tagged = external_eigenstates(sub)
        assert [t for t, _ in tagged] == ["D0", "D1", "D2"]


class TestRefinement:
    def test_exact_optimum_returned_unchanged(self):
        sub = select_subset(FULL3, "ABC")
        state = optimal_states_d3()[0]
        refined = refine_optimal_state(state, sub)
        assert refined is state

    def test_uniform_superposition_rejected(self):
        sub = select_subset(FULL5, "ABCD")
        uniform = PureState.normalized(np.ones(5))
        with pytest.raises(RefinementRejectedError):
            refine_optimal_state(uniform, sub)

    def test_polishes_truncated_parameters(self):
        # member of the refined m=4 family rebuilt with two-decimal moduli
        from eurlab.optstates import _eq7_state

        sub = select_subset(FULL5, "ABCD")
        rough = _eq7_state(0, (1, 4), (2, 3), (0.19, 0.68), (0, "1/5", "4/5", "9/5"))
        refined = refine_optimal_state(rough, sub)
        assert refined.fidelity(rough) > 0.99
        got = entropy_sum(refined, sub).sum
        assert abs(got - REFERENCE_MINIMA[(5, 4, "unique")]) < 1e-6
