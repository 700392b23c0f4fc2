"""Seeded Monte Carlo experiments over the reservoir.

Three experiment families: depletion horizons under slot failure (with and
without refill), quality convergence under lazy refill from providers of
unequal availability, and switch-thrash counting under persistent standbys.
Every trial draws from its own (seed, trial) substream and aggregation is
block-ordered, so results are bit-identical however trials are scheduled.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .probe import ProbeResult, StreamCandidate, empirical_first_success_rounds
from .prospect import DEFAULT_PARAMS, ProspectParams
from .reservoir import Reservoir
from .analytics import SpeedupScenario
from .viability import Rng

__all__ = [
    "DepletionConfig",
    "MonotonicityConfig",
    "TrialSummary",
    "DepletionResult",
    "run_depletion",
    "run_monotonicity",
    "run_thrash",
    "run_speedup_empirical",
]

_BLOCK = 256


@dataclass(frozen=True, slots=True)
class DepletionConfig:
    """Depletion experiment: slot_count slots with per-slot failure rates.

    With refill=True each step is a fresh Bernoulli draw per slot (failed
    standbys are restored between steps), so the reservoir dies only when
    every slot fails within one step.  With refill=False slots draw
    continuous exponential lifetimes and the reservoir dies with the last
    one.  Both are censored at the horizon.
    """

    slot_count: int
    failure_rates: tuple[float, ...]
    horizon: int = 100
    trials: int = 5000
    refill: bool = True

    def __post_init__(self) -> None:
        if self.slot_count < 1:
            raise ValueError("slot_count must be >= 1")
        if len(self.failure_rates) != self.slot_count:
            raise ValueError("need one failure rate per slot")
        if any(rate <= 0.0 for rate in self.failure_rates):
            raise ValueError("failure rates must be positive")
        if self.refill and any(rate > 1.0 for rate in self.failure_rates):
            raise ValueError("per-step failure probabilities must lie in (0, 1]")
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass(frozen=True, slots=True)
class MonotonicityConfig:
    """Lazy-refill experiment over providers of paired (quality, availability).

    Each step every provider is independently up with its availability.
    Standbys of down providers fail their health check and are dropped;
    refill may admit any provider that is up this step and whose
    availability clears the admission threshold tau.
    """

    providers: tuple[tuple[int, float], ...]
    steps: int = 100
    tau: float = 0.3
    slot_count: int = 3

    def __post_init__(self) -> None:
        if not self.providers:
            raise ValueError("at least one provider is required")
        for quality, availability in self.providers:
            if quality <= 0:
                raise ValueError("provider quality must be positive")
            if not 0.0 <= availability <= 1.0:
                raise ValueError("availability must lie in [0, 1]")
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError("tau must lie in [0, 1]")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.slot_count < 1:
            raise ValueError("slot_count must be >= 1")


@dataclass(frozen=True, slots=True)
class TrialSummary:
    """Per-trial outcome of a reservoir experiment."""

    depletion_time: float
    monotone_violations: int
    final_quality: int
    convergence_step: int
    switch_count: int


@dataclass(frozen=True, slots=True)
class DepletionResult:
    mean: float
    stderr: float
    trials: int


def _trial_values(
    trials: int, trial_fn: Callable[[int], float], workers: int = 1
) -> np.ndarray:
    """Evaluate trial_fn over all trial indices, optionally across threads.

    Trials are grouped into fixed blocks and blocks are reduced in index
    order, so the output array (and anything derived from it) is identical
    for any worker count.
    """
    if workers <= 1:
        return np.array([trial_fn(i) for i in range(trials)], dtype=float)
    spans = [(lo, min(lo + _BLOCK, trials)) for lo in range(0, trials, _BLOCK)]

    def run_span(span: tuple[int, int]) -> list[float]:
        return [trial_fn(i) for i in range(span[0], span[1])]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(run_span, spans))
    return np.array([v for part in parts for v in part], dtype=float)


def run_depletion(
    config: DepletionConfig, rng: Rng, workers: int = 1
) -> DepletionResult:
    """Mean depletion time (with standard error) over seeded trials."""
    rates = np.array(config.failure_rates)
    horizon = config.horizon

    if config.refill:

        def trial(index: int) -> float:
            gen = rng.substream(index)
            draws = gen.random((horizon, config.slot_count))
            all_fail = (draws < rates).all(axis=1)
            hits = np.flatnonzero(all_fail)
            return float(hits[0] + 1) if hits.size else float(horizon)

    else:
        scale = 1.0 / rates

        def trial(index: int) -> float:
            gen = rng.substream(index)
            lifetimes = gen.exponential(scale)
            return float(min(lifetimes.max(), horizon))

    times = _trial_values(config.trials, trial, workers)
    stderr = float(times.std(ddof=1) / np.sqrt(config.trials)) if config.trials > 1 else 0.0
    return DepletionResult(mean=float(times.mean()), stderr=stderr, trials=config.trials)


def _provider_candidates(config: MonotonicityConfig) -> list[StreamCandidate]:
    return [
        StreamCandidate(
            id=f"p{index}-{quality}p",
            provider_id=f"p{index}",
            quality=quality,
            locator=f"sim://p{index}/{quality}",
        )
        for index, (quality, _) in enumerate(config.providers)
    ]


def run_monotonicity(
    config: MonotonicityConfig,
    rng: Rng,
    trial: int = 0,
    params: ProspectParams = DEFAULT_PARAMS,
    trace_sink: list[str] | None = None,
) -> TrialSummary:
    """One lazy-refill trial; reports quality trajectory statistics.

    The active stream is consumed, not probed, so it never fails here; the
    experiment isolates the upgrade path.  Quality can therefore only move
    when a refill admission and a positive switch score agree, which is
    exactly the claim under test: the trajectory never steps down, and it
    ends at the best quality whose availability clears tau.
    """
    gen = rng.substream(trial)
    candidates = _provider_candidates(config)
    provider_index = {c.provider_id: i for i, c in enumerate(candidates)}
    availabilities = np.array([a for _, a in config.providers])
    eligible = [
        i for i, (_, availability) in enumerate(config.providers)
        if availability >= config.tau
    ]

    reservoir: Reservoir | None = None
    history: list[int] = []

    def probe_round(up: np.ndarray, indices: Sequence[int]) -> list[ProbeResult]:
        latencies = gen.random(len(candidates)) * 1000.0
        return [
            ProbeResult(
                candidate=candidates[i],
                viable=bool(up[i]),
                latency_ms=float(latencies[i]),
            )
            for i in indices
        ]

    for step in range(config.steps + 1):
        up = gen.random(len(candidates)) < availabilities
        if reservoir is None:
            # Initial acquisition probes every provider; repeat until some
            # candidate is viable.
            attempt = Reservoir.sprint_fill(
                probe_round(up, range(len(candidates))),
                capacity=config.slot_count,
                params=params,
                now=float(step),
            )
            if attempt is not None:
                reservoir = attempt
                history.append(reservoir.active.quality)
            continue
        failures = reservoir.run_health_cycle(
            lambda slot: bool(up[provider_index[slot.candidate.provider_id]]),
            now=float(step),
        )
        if failures > 0 or len(reservoir.slots) < config.slot_count:
            reservoir.refill(probe_round(up, eligible), now=float(step))
        reservoir.evaluate_upgrade(now=float(step))
        history.append(reservoir.active.quality)

    if trace_sink is not None and reservoir is not None:
        trace_sink.extend(reservoir.trace_lines())
    if not history:
        return TrialSummary(
            depletion_time=float(config.steps),
            monotone_violations=0,
            final_quality=0,
            convergence_step=config.steps,
            switch_count=0,
        )
    violations = sum(
        1 for prev, cur in zip(history, history[1:]) if cur < prev
    )
    final = history[-1]
    first_at_final = next(i for i, q in enumerate(history) if q == final)
    offset = config.steps + 1 - len(history)  # steps spent before acquisition
    return TrialSummary(
        depletion_time=float(config.steps),
        monotone_violations=violations,
        final_quality=final,
        convergence_step=first_at_final + offset,
        switch_count=reservoir.switch_count if reservoir is not None else 0,
    )


def run_thrash(
    qualities: Sequence[int],
    steps: int = 100,
    params: ProspectParams = DEFAULT_PARAMS,
    trace_sink: list[str] | None = None,
) -> TrialSummary:
    """Count switches with every stream persistently viable.

    Worst-case churn setup: the lowest quality starts active with every
    other level sitting as a fresh standby, and each step is one health
    cycle (verification counts grow) followed by one upgrade evaluation.
    The switch score's flat cost keeps nearby levels inside a dead zone, so
    the count stays small no matter how long this runs.
    """
    if not qualities:
        raise ValueError("at least one quality level is required")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    candidates = [
        StreamCandidate(
            id=f"s{index}-{quality}p",
            provider_id=f"s{index}",
            quality=quality,
            locator=f"sim://s{index}/{quality}",
        )
        for index, quality in enumerate(qualities)
    ]
    worst = min(candidates, key=lambda c: c.quality)
    rest = [c for c in candidates if c.id != worst.id]
    reservoir = Reservoir.sprint_fill(
        [ProbeResult(candidate=worst, viable=True, latency_ms=0.0)],
        capacity=len(candidates),
        params=params,
        now=0.0,
    )
    assert reservoir is not None
    reservoir.refill(
        [ProbeResult(candidate=c, viable=True, latency_ms=0.0) for c in rest],
        now=0.0,
    )

    history = [reservoir.active.quality]
    for step in range(1, steps + 1):
        reservoir.run_health_cycle(lambda slot: True, now=float(step))
        reservoir.evaluate_upgrade(now=float(step))
        history.append(reservoir.active.quality)

    if trace_sink is not None:
        trace_sink.extend(reservoir.trace_lines())
    violations = sum(1 for prev, cur in zip(history, history[1:]) if cur < prev)
    final = history[-1]
    return TrialSummary(
        depletion_time=float(steps),
        monotone_violations=violations,
        final_quality=final,
        convergence_step=next(i for i, q in enumerate(history) if q == final),
        switch_count=reservoir.switch_count,
    )


def run_speedup_empirical(
    scenario: SpeedupScenario, trials: int, rng: Rng
) -> tuple[float, float]:
    """Monte Carlo (batched_mean, concurrent_mean) for an acquisition scan."""
    return empirical_first_success_rounds(
        scenario.n_candidates,
        scenario.batch_size,
        scenario.failure_prob,
        trials,
        rng,
    )
