"""Property suites: scoring shapes, ordering invariants, machine fuzzing."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuzzutil import run_fuzz_sequence, slot_order_key
from streamres.probe import (
    ProbeResult,
    StreamCandidate,
    simulated_makespan,
    sort_results,
)
from streamres.prospect import DEFAULT_PARAMS, ProspectParams, switch_score, value, weight
from streamres.reservoir import Reservoir
from streamres.simulator import run_thrash

finite = st.floats(allow_nan=False, allow_infinity=False)


class TestScoringShapes:
    @given(st.floats(min_value=-1.0, max_value=1.0), st.floats(min_value=-1.0, max_value=1.0))
    def test_value_is_monotone(self, a, b):
        lo, hi = sorted((a, b))
        assert value(lo) <= value(hi) + 1e-12

    @given(st.floats(min_value=0.0, max_value=1.0))
    def test_weight_stays_in_unit_interval(self, p):
        assert 0.0 <= weight(p) <= 1.0

    @given(st.floats(min_value=1e-9, max_value=1.0))
    def test_loss_ratio_is_constant(self, x):
        assert abs(value(-x)) / value(x) == pytest.approx(
            DEFAULT_PARAMS.loss_aversion, rel=1e-9
        )

    @given(
        st.floats(min_value=1.0, max_value=4320.0),
        st.integers(min_value=0, max_value=200),
        st.floats(min_value=0.01, max_value=0.5),
    )
    def test_same_quality_scores_minus_cost(self, quality, n, cost):
        params = ProspectParams(switch_cost=cost)
        assert switch_score(quality, quality, n, params) == -cost

    @given(
        st.floats(min_value=1.0, max_value=1960.0),
        st.integers(min_value=0, max_value=194),
        st.integers(min_value=0, max_value=60),
    )
    def test_dead_zone_holds_at_any_confidence(self, quality, delta, n):
        # Gains under ~194 pixels never clear the flat cost, however
        # many verifications the candidate accrues.
        assert switch_score(quality, quality + delta, n) < 0.0

    @given(
        st.floats(min_value=1.0, max_value=2000.0),
        st.floats(min_value=1.0, max_value=2000.0),
        st.integers(min_value=0, max_value=30),
    )
    def test_score_stays_inside_value_envelope(self, qa, qc, n):
        # The confidence discount only shrinks the valued delta toward zero,
        # so the score lies between -cost and the undiscounted value - cost.
        score = switch_score(qa, qc, n)
        full = value((qc - qa) / DEFAULT_PARAMS.quality_ceiling)
        cost = DEFAULT_PARAMS.switch_cost
        lo, hi = sorted((full - cost, -cost))
        assert lo - 1e-12 <= score <= hi + 1e-12


def brute_force_rank(results):
    """O(n^2) stable selection by the documented comparison."""
    remaining = list(enumerate(results))
    ranked = []
    while remaining:
        best_pos = 0
        for pos in range(1, len(remaining)):
            _, contender = remaining[pos]
            best_index, best = remaining[best_pos]
            better = (not contender.viable, contender.latency_ms) < (
                not best.viable,
                best.latency_ms,
            )
            if better:
                best_pos = pos
        ranked.append(remaining.pop(best_pos)[1])
    return ranked


class TestProbeSort:
    @given(
        st.lists(
            st.tuples(st.booleans(), st.floats(min_value=0.0, max_value=5000.0)),
            max_size=24,
        )
    )
    def test_matches_brute_force(self, rows):
        results = [
            ProbeResult(
                candidate=StreamCandidate(f"c{i}", f"p{i}", 720, f"sim://c{i}"),
                viable=viable,
                latency_ms=latency,
            )
            for i, (viable, latency) in enumerate(rows)
        ]
        assert sort_results(results) == brute_force_rank(results)


class TestMakespan:
    @given(
        st.lists(st.floats(min_value=0.0, max_value=1000.0), min_size=1, max_size=20),
        st.integers(min_value=1, max_value=25),
    )
    def test_bounded_by_max_and_sum(self, latencies, lanes):
        span = simulated_makespan(latencies, lanes)
        assert max(latencies) - 1e-9 <= span <= sum(latencies) + 1e-9

    @given(
        st.lists(st.floats(min_value=0.0, max_value=1000.0), min_size=1, max_size=20),
        st.integers(min_value=1, max_value=10),
    )
    def test_more_lanes_never_slower(self, latencies, lanes):
        assert (
            simulated_makespan(latencies, lanes + 1)
            <= simulated_makespan(latencies, lanes) + 1e-9
        )


class TestNoThrash:
    @given(
        st.integers(min_value=1, max_value=6),
        st.sampled_from([360, 720, 1080, 2160]),
    )
    @settings(max_examples=30, deadline=None)
    def test_equal_quality_fleet_never_switches(self, fleet, quality):
        summary = run_thrash((quality,) * fleet, steps=30)
        assert summary.switch_count == 0


def probe_result(name, quality, latency=100.0):
    return ProbeResult(
        candidate=StreamCandidate(name, f"p-{name}", quality, f"sim://{name}"),
        viable=True,
        latency_ms=latency,
    )


class TestRefillAdmission:
    @given(
        st.lists(st.sampled_from([360, 480, 720, 1080, 2160]), min_size=1, max_size=4),
        st.lists(st.sampled_from([360, 480, 720, 1080, 2160]), max_size=5),
    )
    @settings(max_examples=80, deadline=None)
    def test_refill_never_worsens_held_qualities(self, initial, fresh):
        reservoir = Reservoir.sprint_fill(
            [probe_result(f"i{j}", q, latency=float(j)) for j, q in enumerate(initial)],
            capacity=4,
        )
        assert reservoir is not None
        before = sorted((slot.quality for slot in reservoir.slots), reverse=True)
        reservoir.refill(
            [probe_result(f"n{j}", q, latency=float(j)) for j, q in enumerate(fresh)],
            now=1.0,
        )
        after = sorted((slot.quality for slot in reservoir.slots), reverse=True)
        assert len(after) >= len(before)
        for held, now_held in zip(before, after):
            assert now_held >= held


class TestMachineFuzz:
    def test_invariants_over_random_sequences(self):
        # The heavyweight >= 10^4 sweep lives in the acceptance suite; this
        # is the fast everyday slice.
        for seed in range(300):
            run_fuzz_sequence(seed, ops=25)

    def test_standby_order_restored_after_fuzz(self):
        for seed in range(40):
            reservoir = run_fuzz_sequence(seed, ops=15)
            standbys = list(reservoir.standbys)
            assert standbys == sorted(standbys, key=slot_order_key)
