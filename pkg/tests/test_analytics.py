"""Closed-form analytics against independent numerical oracles.

expected_max_exponential is checked against scipy quadrature of the survival
function, censored_depletion_mean against a direct probability-mass sum, and
the speedup table against frozen values recomputed from the formula.
"""

import math

import pytest
from scipy import integrate

from streamres.analytics import (
    MarkovRates,
    SpeedupScenario,
    batched_speedup,
    censored_depletion_mean,
    expected_max_exponential,
    expected_time_batched,
    expected_time_concurrent,
    harmonic_number,
    interruption_probability,
    no_thrash_bound,
    stationary_availability,
    utility_estimate,
)

TABLE_RATES = (0.10, 0.12, 0.15)


def quad_max_exponential(rates):
    """E[max] = integral of P(max > t) dt, evaluated numerically."""

    def survival(t):
        prod = 1.0
        for rate in rates:
            prod *= 1.0 - math.exp(-rate * t)
        return 1.0 - prod

    total, _ = integrate.quad(survival, 0.0, math.inf)
    return total


def summed_censored_mean(p, horizon):
    """E[min(G, T)] by direct summation over the geometric pmf."""
    total = sum(t * p * (1.0 - p) ** (t - 1) for t in range(1, horizon + 1))
    return total + horizon * (1.0 - p) ** horizon


class TestStationaryAvailability:
    def test_value(self):
        assert stationary_availability(MarkovRates(0.1, 0.9)) == pytest.approx(0.9)

    def test_bounds(self):
        for lam, mu in ((0.5, 0.5), (2.0, 1.0), (0.01, 10.0)):
            a = stationary_availability(MarkovRates(lam, mu))
            assert 0.0 <= a <= 1.0
            assert a == pytest.approx(mu / (mu + lam), abs=1e-15)

    def test_rejects_bad_rates(self):
        with pytest.raises(ValueError):
            MarkovRates(-0.1, 0.9)
        with pytest.raises(ValueError):
            MarkovRates(0.0, 0.0)


class TestInterruptionProbability:
    def test_single_slot(self):
        assert interruption_probability([0.1], 10.0) == pytest.approx(
            1.0 - math.exp(-1.0), abs=1e-12
        )

    def test_zero_horizon(self):
        assert interruption_probability([0.1, 0.2], 0.0) == 0.0

    def test_each_slot_helps(self):
        horizon = 20.0
        probs = [
            interruption_probability([0.1] * k, horizon) for k in range(1, 6)
        ]
        assert probs == sorted(probs, reverse=True)
        assert all(p > q for p, q in zip(probs, probs[1:]))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            interruption_probability([], 1.0)


class TestHarmonic:
    def test_exact_values(self):
        assert harmonic_number(1) == 1.0
        assert harmonic_number(3) == pytest.approx(11.0 / 6.0, abs=1e-15)
        assert harmonic_number(8) == pytest.approx(
            sum(1.0 / j for j in range(1, 9)), abs=1e-15
        )

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            harmonic_number(0)


class TestExpectedMaxExponential:
    def test_equal_rates_harmonic_identity(self):
        for k in (1, 2, 3, 5, 10):
            for rate in (0.05, 0.1, 1.0):
                exact = expected_max_exponential([rate] * k)
                assert exact == pytest.approx(
                    harmonic_number(k) / rate, rel=1e-12
                )

    def test_against_quadrature(self):
        for rates in (TABLE_RATES, (0.3,), (0.07, 0.4), (0.1, 0.1, 0.2, 0.9)):
            assert expected_max_exponential(rates) == pytest.approx(
                quad_max_exponential(rates), rel=1e-9
            )

    def test_table_rates_frozen(self):
        assert expected_max_exponential(TABLE_RATES) == pytest.approx(
            15.453544, abs=1e-6
        )

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            expected_max_exponential([])
        with pytest.raises(ValueError):
            expected_max_exponential([0.1, 0.0])
        with pytest.raises(ValueError):
            expected_max_exponential([0.1] * 21)


class TestSpeedup:
    def test_table_values(self):
        assert batched_speedup(SpeedupScenario(12, 3, 0.4)) == pytest.approx(
            4.27, abs=0.01
        )
        assert batched_speedup(SpeedupScenario(20, 5, 0.3)) == pytest.approx(
            4.01, abs=0.01
        )
        assert batched_speedup(SpeedupScenario(8, 2, 0.5)) == pytest.approx(
            5.31, abs=0.01
        )

    def test_formula_recomputation(self):
        for n, b, f in ((12, 3, 0.4), (20, 5, 0.3), (8, 2, 0.5), (6, 2, 0.25)):
            scenario = SpeedupScenario(n, b, f)
            expected = (n / b) * (1.0 - f**n) / (1.0 - f**b)
            assert batched_speedup(scenario) == pytest.approx(expected, rel=1e-12)

    def test_whole_fleet_batch_is_no_slower(self):
        scenario = SpeedupScenario(10, 10, 0.3)
        assert batched_speedup(scenario) == pytest.approx(1.0, abs=1e-12)

    def test_zero_failure(self):
        scenario = SpeedupScenario(9, 3, 0.0)
        assert expected_time_concurrent(scenario) == 1.0
        assert expected_time_batched(scenario) == 3.0

    def test_components(self):
        scenario = SpeedupScenario(12, 3, 0.4)
        assert expected_time_concurrent(scenario) == pytest.approx(
            1.0 / (1.0 - 0.4**12), rel=1e-12
        )
        assert expected_time_batched(scenario) == pytest.approx(
            4.0 / (1.0 - 0.4**3), rel=1e-12
        )

    def test_scenario_validation(self):
        with pytest.raises(ValueError):
            SpeedupScenario(0, 1, 0.1)
        with pytest.raises(ValueError):
            SpeedupScenario(5, 6, 0.1)
        with pytest.raises(ValueError):
            SpeedupScenario(5, 2, 1.0)


class TestCensoredDepletionMean:
    def test_against_direct_sum(self):
        for p, horizon in ((0.0018, 100), (0.1, 100), (0.5, 10), (0.9, 3)):
            assert censored_depletion_mean(p, horizon) == pytest.approx(
                summed_censored_mean(p, horizon), rel=1e-12
            )

    def test_reference_point(self):
        assert censored_depletion_mean(0.0018, 100) == pytest.approx(
            91.591808, abs=1e-6
        )

    def test_certain_failure(self):
        assert censored_depletion_mean(1.0, 100) == 1.0

    def test_deep_censoring(self):
        # Nearly-impossible failure: the mean collapses to the horizon.
        assert censored_depletion_mean(1e-12, 50) == pytest.approx(50.0, rel=1e-9)

    def test_validation(self):
        with pytest.raises(ValueError):
            censored_depletion_mean(0.0, 100)
        with pytest.raises(ValueError):
            censored_depletion_mean(0.5, 0)


class TestBounds:
    def test_no_thrash_reference_point(self):
        assert no_thrash_bound(100.0, 0.12, 0.12, 2160.0) == pytest.approx(
            1.607, abs=1e-3
        )

    def test_no_thrash_linear_in_horizon(self):
        one = no_thrash_bound(100.0, 0.12, 0.12, 2160.0)
        ten = no_thrash_bound(1000.0, 0.12, 0.12, 2160.0)
        assert ten == pytest.approx(10.0 * one, rel=1e-12)

    def test_no_thrash_validation(self):
        with pytest.raises(ValueError):
            no_thrash_bound(-1.0, 0.12, 0.12, 2160.0)
        with pytest.raises(ValueError):
            no_thrash_bound(100.0, 0.0, 0.12, 2160.0)

    def test_utility_estimate(self):
        assert utility_estimate(1, 0.1) == pytest.approx(10.0)
        assert utility_estimate(3, 0.1) == pytest.approx(18.333333, abs=1e-5)
        with pytest.raises(ValueError):
            utility_estimate(3, 0.0)
