"""Tests for the state parametrization and the entropy-sum minimizer."""

import math

import numpy as np
import pytest

from eurlab.entropy import entropy_sum
from eurlab.exceptions import (
    BoundViolationError,
    ClassificationAmbiguousError,
    NonConvergenceError,
)
from eurlab.minimizer import (
    D5_TRIPLE_CLASSES,
    MinimizationConfig,
    batch_entropy_sums,
    classify_d5_triple,
    d5_triple_class,
    minimize_entropy_sum,
    parametrize_state,
    scan_exceedance,
    state_parameters,
    variant_for_minimum,
    _stacked_measurement,
)
from eurlab.optstates import catalog_states, optimal_states_d3
from eurlab.qstate import build_full_mub_set, random_state, select_subset

FULL3 = build_full_mub_set(3)
FULL4 = build_full_mub_set(4)
FULL5 = build_full_mub_set(5)

FAST = MinimizationConfig(restarts=40, seed=3)


class TestParametrization:
    def test_pole_is_first_basis_state(self):
        state = parametrize_state(np.zeros(4))
        assert np.allclose(state.amplitudes, [1, 0, 0], atol=1e-15)

    def test_uniform_superposition_d4(self):
        thetas = [math.acos(1 / 2), math.acos(1 / math.sqrt(3)), math.acos(1 / math.sqrt(2))]
        state = parametrize_state(np.array(thetas + [0.0, 0.0, 0.0]))
        assert np.allclose(state.amplitudes, 0.5, atol=1e-12)

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_round_trip_fidelity(self, d):
        for seed in range(40):
            psi = random_state(d, 100 + seed)
            again = parametrize_state(state_parameters(psi))
            assert abs(1.0 - psi.fidelity(again)) < 1e-12

    def test_amplitude_zero_real_nonnegative(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            state = parametrize_state(rng.uniform(-3, 3, size=8))
            assert state.amplitudes[0].imag == 0.0
            assert state.amplitudes[0].real >= 0.0

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            parametrize_state(np.zeros(5))
        with pytest.raises(ValueError):
            parametrize_state(np.zeros(4), dim=5)

    def test_zero_amplitude_state_round_trip(self):
        psi = parametrize_state(np.array([math.pi / 2, math.pi / 4, 0.3, 0.9]))
        assert abs(psi.amplitudes[0]) < 1e-15
        again = parametrize_state(state_parameters(psi))
        assert abs(1.0 - psi.fidelity(again)) < 1e-12


class TestGradientConsistency:
    def test_matches_secant_slope(self):
        # central-difference gradient vs a secant along a random direction
        from eurlab.minimizer import _fd_gradient, _objective

        sub = select_subset(FULL4, "ABC")
        stacked = _stacked_measurement(sub)
        rng = np.random.default_rng(17)
        for _ in range(20):
            x = rng.uniform(0.3, 1.2, size=6)[None, :]
            grad = _fd_gradient(x, stacked, 1e-6)[0]
            direction = rng.normal(size=6)
            direction /= np.linalg.norm(direction)
            h = 1e-5
            secant = (
                _objective(x + h * direction, stacked, floored=True)[0]
                - _objective(x - h * direction, stacked, floored=True)[0]
            ) / (2 * h)
            predicted = float(grad @ direction)
            assert abs(predicted - secant) <= 1e-4 * max(1.0, abs(secant))


class TestMinimize:
    def test_d3_triple(self):
        certified = minimize_entropy_sum(select_subset(FULL3, "ABC"), FAST)
        assert abs(certified.min_value - 3.0) < 1e-6
        assert certified.restarts_converged >= 1
        assert abs(entropy_sum(certified.argmin, select_subset(FULL3, "ABC")).sum
                   - certified.min_value) < 1e-9

    def test_d4_full_set(self):
        certified = minimize_entropy_sum(FULL4, FAST)
        assert abs(certified.min_value - 7.0) < 1e-6

    def test_min_not_above_catalog_states(self):
        sub = select_subset(FULL3, "ABD")
        certified = minimize_entropy_sum(sub, FAST)
        for state in optimal_states_d3():
            assert certified.min_value <= entropy_sum(state, sub).sum + 1e-9

    def test_deterministic(self):
        sub = select_subset(FULL4, "BCD")
        c1 = minimize_entropy_sum(sub, MinimizationConfig(restarts=20, seed=9))
        c2 = minimize_entropy_sum(sub, MinimizationConfig(restarts=20, seed=9))
        assert c1.min_value == c2.min_value
        assert np.array_equal(c1.argmin.amplitudes, c2.argmin.amplitudes)
        assert c1.restarts_converged == c2.restarts_converged

    def test_warm_start_stays_at_optimum(self):
        sub = select_subset(FULL3, "ABC")
        state = optimal_states_d3()[4]
        certified = minimize_entropy_sum(
            sub,
            MinimizationConfig(restarts=1, seed=0),
            include_catalog_warm_starts=False,
            extra_warm_starts=(state,),
        )
        assert abs(certified.min_value - entropy_sum(state, sub).sum) < 1e-6

    def test_non_convergence_error(self):
        config = MinimizationConfig(
            restarts=3, max_iterations=1, step_tolerance=1e-30, seed=1
        )
        with pytest.raises(NonConvergenceError) as err:
            minimize_entropy_sum(
                select_subset(FULL4, "ABC"), config, include_catalog_warm_starts=False
            )
        assert err.value.best_value is not None
        assert err.value.best_state is not None

    def test_without_warm_starts_still_certifies(self):
        sub = select_subset(FULL3, "ABC")
        certified = minimize_entropy_sum(sub, FAST, include_catalog_warm_starts=False)
        assert abs(certified.min_value - 3.0) < 1e-6

    def test_below_catalog_fails_loudly(self):
        # a class2 triple certifies at ~4.432, well below the class1 bound;
        # forcing the class1 catalog value must trip the violation guard
        sub = select_subset(FULL5, "ABD")
        with pytest.raises(BoundViolationError):
            minimize_entropy_sum(sub, MinimizationConfig(restarts=25, seed=4), variant="class1")


class TestD5Classification:
    def test_variant_for_minimum(self):
        assert variant_for_minimum(2 * math.log2(5)) == "class1"
        assert variant_for_minimum(4.4322) == "class2"
        with pytest.raises(ClassificationAmbiguousError):
            variant_for_minimum(4.55)

    def test_shipped_table_shape(self):
        assert len(D5_TRIPLE_CLASSES) == 20
        assert any(tag == "class1" for tag in D5_TRIPLE_CLASSES.values())

    def test_d5_triple_class_lookup(self):
        assert d5_triple_class(("A", "B", "C")) in ("class1", "class2")
        with pytest.raises(ClassificationAmbiguousError):
            d5_triple_class(("A", "B"))

    def test_classify_one_class1_triple(self):
        # ABC certifies at 2*log2(5); light config keeps this a unit test
        tag = classify_d5_triple("ABC", MinimizationConfig(restarts=25, seed=2))
        assert tag == "class1"

    def test_classify_one_class2_triple(self):
        tag = classify_d5_triple("ABD", MinimizationConfig(restarts=25, seed=2))
        assert tag == "class2"


class TestScan:
    def test_d3_scan_no_violations(self):
        result = scan_exceedance(select_subset(FULL3, "ABC"), n_samples=500, seed=0)
        assert result.count_below == 0
        assert result.min_sum >= 3.0 - 1e-6

    def test_d4_pair_scan(self):
        result = scan_exceedance(select_subset(FULL4, "AB"), n_samples=500, seed=10)
        assert result.count_below == 0
        assert result.min_sum >= 2.0 - 1e-6

    def test_scan_matches_entropy_sum(self):
        sub = select_subset(FULL5, "ABCD")
        result = scan_exceedance(sub, n_samples=50, seed=7)
        sums = [entropy_sum(random_state(5, 7 + i), sub).sum for i in range(50)]
        assert np.isclose(result.min_sum, min(sums), atol=1e-12)

    def test_invalid_sample_count(self):
        with pytest.raises(ValueError):
            scan_exceedance(select_subset(FULL3, "AB"), n_samples=0, seed=0)


class TestBatchEvaluation:
    def test_batch_matches_entropy_sum(self):
        sub = select_subset(FULL5, "ABCDE")
        stacked = _stacked_measurement(sub)
        states = [random_state(5, 600 + i) for i in range(20)]
        batch = batch_entropy_sums(np.vstack([s.amplitudes for s in states]), stacked)
        for state, value in zip(states, batch):
            assert abs(entropy_sum(state, sub).sum - value) < 1e-12
