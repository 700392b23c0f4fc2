"""Concurrent stream probing: fan out, collect everything, sort by merit.

A probe round issues up to max_in_flight checks at once and always waits for
every verdict; there is no early exit, because the reservoir wants the full
ranking, not just the first success.  SimTransport draws deterministic
verdicts from per-candidate substreams; HttpTransport issues real HEAD
requests and never raises.
"""

from __future__ import annotations

import threading
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from heapq import heappush, heapreplace
from typing import Iterable, Mapping, Protocol, Sequence

import numpy as np
import requests

from .viability import Rng

__all__ = [
    "StreamCandidate",
    "ProbeResult",
    "Transport",
    "SimTransport",
    "HttpTransport",
    "probe_all",
    "sort_results",
    "simulated_makespan",
    "empirical_first_success_rounds",
]

DEFAULT_TIMEOUT_MS = 3000.0

# Geometric round counts explode as the per-probe failure probability
# approaches 1; reject anything at or beyond this.
MAX_FAILURE_PROB = 0.999


@dataclass(frozen=True, slots=True)
class StreamCandidate:
    """One probeable stream: identity, provider, advertised quality, locator."""

    id: str
    provider_id: str
    quality: int
    locator: str

    def __post_init__(self) -> None:
        if self.quality <= 0:
            raise ValueError("quality must be positive")


@dataclass(frozen=True, slots=True)
class ProbeResult:
    """Verdict for one candidate: viability, time to verdict, optional status."""

    candidate: StreamCandidate
    viable: bool
    latency_ms: float
    timed_out: bool = False
    status: int | None = None


class Transport(Protocol):
    def probe(self, candidate: StreamCandidate, timeout_ms: float) -> ProbeResult: ...


class SimTransport:
    """Deterministic fake transport.

    Each (candidate, attempt) pair draws from its own substream, keyed by a
    CRC of the candidate id and a per-candidate attempt counter, so verdicts
    do not depend on list order or thread scheduling.  Latency is lognormal
    around median_latency_ms; failure probability may be global or per-id.
    """

    def __init__(
        self,
        rng: Rng,
        failure_prob: float | Mapping[str, float] = 0.0,
        median_latency_ms: float = 300.0,
        sigma: float = 0.6,
    ) -> None:
        if median_latency_ms <= 0.0 or sigma < 0.0:
            raise ValueError("median latency must be positive and sigma non-negative")
        self._rng = rng
        self._failure_prob = failure_prob
        self._median = median_latency_ms
        self._sigma = sigma
        self._attempts: dict[str, int] = {}
        self._lock = threading.Lock()

    def _fail_prob(self, candidate_id: str) -> float:
        if isinstance(self._failure_prob, Mapping):
            prob = self._failure_prob.get(candidate_id, 0.0)
        else:
            prob = self._failure_prob
        if not 0.0 <= prob <= 1.0:
            raise ValueError("failure probability must lie in [0, 1]")
        return prob

    def probe(self, candidate: StreamCandidate, timeout_ms: float) -> ProbeResult:
        with self._lock:
            attempt = self._attempts.get(candidate.id, 0)
            self._attempts[candidate.id] = attempt + 1
        gen = self._rng.substream(zlib.crc32(candidate.id.encode()), attempt)
        # Fixed draw order: failure verdict first, then latency.
        failed = gen.random() < self._fail_prob(candidate.id)
        latency = self._median * float(np.exp(self._sigma * gen.standard_normal()))
        return ProbeResult(candidate=candidate, viable=not failed, latency_ms=latency)


class HttpTransport:
    """HEAD-request transport.  2xx/3xx means viable; errors never propagate."""

    def __init__(self, session: requests.Session | None = None) -> None:
        self._session = session or requests.Session()

    def probe(self, candidate: StreamCandidate, timeout_ms: float) -> ProbeResult:
        started = time.perf_counter()
        try:
            response = self._session.head(
                candidate.locator, timeout=timeout_ms / 1000.0, allow_redirects=False
            )
        except requests.Timeout:
            return ProbeResult(
                candidate=candidate,
                viable=False,
                latency_ms=timeout_ms,
                timed_out=True,
            )
        except requests.RequestException:
            elapsed = (time.perf_counter() - started) * 1000.0
            return ProbeResult(candidate=candidate, viable=False, latency_ms=elapsed)
        elapsed = (time.perf_counter() - started) * 1000.0
        return ProbeResult(
            candidate=candidate,
            viable=200 <= response.status_code < 400,
            latency_ms=elapsed,
            status=response.status_code,
        )


def probe_all(
    candidates: Sequence[StreamCandidate],
    transport: Transport,
    timeout_ms: float = DEFAULT_TIMEOUT_MS,
    max_in_flight: int | None = None,
) -> list[ProbeResult]:
    """Probe every candidate concurrently and return one result per candidate.

    Results come back in input order.  A verdict slower than the timeout is
    recorded as timed out and non-viable with latency clamped to the timeout.
    """
    if timeout_ms <= 0.0:
        raise ValueError("timeout must be positive")
    if max_in_flight is None:
        max_in_flight = max(1, len(candidates))
    if max_in_flight < 1:
        raise ValueError("max_in_flight must be >= 1")
    if not candidates:
        return []

    def run(candidate: StreamCandidate) -> ProbeResult:
        result = transport.probe(candidate, timeout_ms)
        if result.latency_ms > timeout_ms:
            return replace(result, viable=False, timed_out=True, latency_ms=timeout_ms)
        return result

    with ThreadPoolExecutor(max_workers=max_in_flight) as pool:
        return list(pool.map(run, candidates))


def sort_results(results: Iterable[ProbeResult]) -> list[ProbeResult]:
    """Viable results first, then ascending latency; ties keep input order."""
    return sorted(results, key=lambda r: (not r.viable, r.latency_ms))


def simulated_makespan(latencies_ms: Sequence[float], max_in_flight: int) -> float:
    """Completion time of a probe round under a simulated clock.

    Greedy list scheduling in submission order: with max_in_flight >= len the
    round takes max(latencies); with one lane it degenerates to the sum.
    """
    if max_in_flight < 1:
        raise ValueError("max_in_flight must be >= 1")
    if any(latency < 0.0 for latency in latencies_ms):
        raise ValueError("latencies must be non-negative")
    lanes: list[float] = []
    makespan = 0.0
    for latency in latencies_ms:
        if len(lanes) < max_in_flight:
            done = latency
            heappush(lanes, done)
        else:
            done = lanes[0] + latency
            heapreplace(lanes, done)
        makespan = max(makespan, done)
    return makespan


def empirical_first_success_rounds(
    n_candidates: int,
    batch_size: int,
    failure_prob: float,
    trials: int,
    rng: Rng,
) -> tuple[float, float]:
    """Monte Carlo mean time to first success: (batched, concurrent).

    Each round of the batched scan probes batch_size candidates and the scan
    walks n/b batches, so a trial costs (n/b) * rounds-to-first-success; the
    concurrent scan probes everything at once and costs just its round count.
    Per-trial substreams keep the estimate reproducible under any schedule.
    """
    if n_candidates < 1 or not 1 <= batch_size <= n_candidates:
        raise ValueError("need 1 <= batch_size <= n_candidates")
    if failure_prob < 0.0 or failure_prob >= MAX_FAILURE_PROB:
        raise ValueError(f"failure_prob must lie in [0, {MAX_FAILURE_PROB})")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p_batch = 1.0 - failure_prob**batch_size
    p_all = 1.0 - failure_prob**n_candidates
    cost_factor = n_candidates / batch_size
    batched = np.empty(trials)
    concurrent = np.empty(trials)
    for trial in range(trials):
        gen = rng.substream(trial)
        batched[trial] = cost_factor * gen.geometric(p_batch)
        concurrent[trial] = gen.geometric(p_all)
    return float(batched.mean()), float(concurrent.mean())
