"""k-slot reservoir of verified streams.

One slot is active (being consumed); the rest are warm standbys.  The
lifecycle is a four-state machine: a sprint fills the reservoir from probe
results, a maintain loop health-checks standbys and lazily refills losses,
failures promote the best standby, and a drained reservoir asks to be
re-acquired.  Upgrades to better standbys go through the loss-averse switch
score, so a standby can outrank the active stream without instantly stealing
the session; it must first earn enough verification confidence.

Standbys are always kept quality-descending (ties: more verifications, then
earlier arrival).  The active slot may temporarily trail its standbys
between an admission and the upgrade decision that resolves it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, Sequence

from .probe import ProbeResult, StreamCandidate, sort_results
from .prospect import DEFAULT_PARAMS, ProspectParams, switch_score

__all__ = [
    "ReservoirState",
    "LEGAL_TRANSITIONS",
    "EVENT_KINDS",
    "Slot",
    "ReservoirEvent",
    "Reservoir",
]

# The active slot is never health-checked; it is implicitly verified by
# consumption.  Its count still grows once per cycle, capped here so a
# long-lived active stream cannot build an unbeatable verification lead.
ACTIVE_VERIFIED_CAP = 10

# Confidence granted to a never-before-seen candidate during refill
# admission: exactly one passed probe.
FRESH_VERIFICATIONS = 1


class ReservoirState(Enum):
    SPRINT = "sprint"
    MAINTAIN = "maintain"
    TRANSITION = "transition"
    DEPLETED = "depleted"


LEGAL_TRANSITIONS: frozenset[tuple[ReservoirState, ReservoirState]] = frozenset(
    {
        (ReservoirState.SPRINT, ReservoirState.MAINTAIN),
        (ReservoirState.MAINTAIN, ReservoirState.TRANSITION),
        (ReservoirState.TRANSITION, ReservoirState.MAINTAIN),
        (ReservoirState.TRANSITION, ReservoirState.DEPLETED),
        (ReservoirState.MAINTAIN, ReservoirState.DEPLETED),
        (ReservoirState.DEPLETED, ReservoirState.SPRINT),
    }
)

EVENT_KINDS = frozenset(
    {
        "filled",
        "health_pass",
        "health_fail",
        "refill",
        "failover",
        "upgrade",
        "depleted",
        "reacquire",
    }
)


@dataclass(slots=True)
class Slot:
    """One admitted stream and its verification history."""

    candidate: StreamCandidate
    verified_count: int = 1
    last_verified: float = 0.0
    prefetched: bool = False
    probe_latency_ms: float = 0.0
    arrival: int = 0

    @property
    def quality(self) -> int:
        return self.candidate.quality


@dataclass(frozen=True, slots=True)
class ReservoirEvent:
    kind: str
    slot_id: str | None
    timestamp: float
    score: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")


class Reservoir:
    """Mutable reservoir state machine.  Build one with sprint_fill()."""

    def __init__(
        self, capacity: int, params: ProspectParams = DEFAULT_PARAMS
    ) -> None:
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self.params = params
        self.state = ReservoirState.SPRINT
        self.switch_count = 0
        self._slots: list[Slot] = []
        self._events: list[ReservoirEvent] = []
        self._transitions: list[tuple[ReservoirState, ReservoirState]] = []
        self._arrival_seq = 0
        self._clock = 0.0

    # -- construction ------------------------------------------------------

    @classmethod
    def sprint_fill(
        cls,
        probe_results: Sequence[ProbeResult],
        capacity: int,
        params: ProspectParams = DEFAULT_PARAMS,
        now: float = 0.0,
    ) -> "Reservoir | None":
        """Build a reservoir from one concurrent probe round.

        Admits the up-to-capacity fastest viable candidates, makes the
        highest-quality one active, and prefetches the rest.  Returns None
        when nothing viable came back: acquisition failed, probe again.
        """
        if not probe_results:
            raise ValueError("probe_results must be non-empty")
        reservoir = cls(capacity=capacity, params=params)
        if not reservoir._fill(probe_results, now):
            return None
        return reservoir

    def _fill(self, probe_results: Sequence[ProbeResult], now: float) -> bool:
        viable = [r for r in sort_results(probe_results) if r.viable]
        if not viable:
            return False
        for result in viable[: self.capacity]:
            self._admit(result, now)
        # Highest quality leads; admission (latency) order breaks ties via
        # arrival, keeping equal-quality picks deterministic.
        self._slots.sort(key=_slot_order)
        self._slots[0].prefetched = False
        self._transition(ReservoirState.MAINTAIN)
        self._log("filled", self.active.candidate.id, now)
        return True

    def _admit(self, result: ProbeResult, now: float) -> Slot:
        slot = Slot(
            candidate=result.candidate,
            verified_count=FRESH_VERIFICATIONS,
            last_verified=now,
            prefetched=True,
            probe_latency_ms=result.latency_ms,
            arrival=self._arrival_seq,
        )
        self._arrival_seq += 1
        self._slots.append(slot)
        return slot

    # -- views -------------------------------------------------------------

    @property
    def active(self) -> Slot:
        if not self._slots:
            raise RuntimeError("reservoir has no slots")
        return self._slots[0]

    @property
    def slots(self) -> tuple[Slot, ...]:
        return tuple(self._slots)

    @property
    def standbys(self) -> tuple[Slot, ...]:
        return tuple(self._slots[1:])

    @property
    def events(self) -> tuple[ReservoirEvent, ...]:
        return tuple(self._events)

    @property
    def transitions(self) -> tuple[tuple[ReservoirState, ReservoirState], ...]:
        return tuple(self._transitions)

    def slot_ids(self) -> set[str]:
        return {slot.candidate.id for slot in self._slots}

    # -- maintain loop -----------------------------------------------------

    def on_health_result(self, slot_index: int, viable: bool, now: float) -> bool:
        """Apply one standby health verdict.  Returns True if refill is needed.

        The active slot (index 0) is never health-checked; passing it here is
        a caller bug.  A failed standby is dropped on the spot and the caller
        is asked to refill.
        """
        self._require(ReservoirState.MAINTAIN)
        if slot_index == 0:
            raise ValueError("the active slot is implicitly verified, not checked")
        if not 1 <= slot_index < len(self._slots):
            raise ValueError(f"no standby at index {slot_index}")
        slot = self._slots[slot_index]
        if viable:
            slot.verified_count += 1
            slot.last_verified = now
            self._log("health_pass", slot.candidate.id, now)
            return False
        del self._slots[slot_index]
        self._log("health_fail", slot.candidate.id, now)
        return True

    def run_health_cycle(self, checker: Callable[[Slot], bool], now: float) -> int:
        """Check every standby once; credit the active implicitly.

        Returns the number of standbys that failed (each one is an open
        refill request).
        """
        self._require(ReservoirState.MAINTAIN)
        failures = 0
        for slot_id in [slot.candidate.id for slot in self._slots[1:]]:
            index = self._index_of(slot_id)
            if index is None:
                continue
            if self.on_health_result(index, checker(self._slots[index]), now):
                failures += 1
        active = self.active
        active.verified_count = min(ACTIVE_VERIFIED_CAP, active.verified_count + 1)
        active.last_verified = now
        return failures

    def refill(self, fresh_results: Sequence[ProbeResult], now: float) -> int:
        """Admit fresh probe results, best quality first.  Returns admissions.

        Vacant slots take the highest-quality viable candidates outright.
        Once full, a fresh candidate must beat the worst standby through the
        switch score at fresh-candidate confidence; the displaced standby is
        dropped.  A candidate already holding a slot is never admitted twice.
        """
        self._require(ReservoirState.MAINTAIN)
        fresh = [r for r in fresh_results if r.viable]
        fresh.sort(key=lambda r: (-r.candidate.quality, r.latency_ms))
        admitted = 0
        for result in fresh:
            if result.candidate.id in self.slot_ids():
                continue
            if len(self._slots) < self.capacity:
                slot = self._admit(result, now)
                self._log("refill", slot.candidate.id, now)
                admitted += 1
            else:
                if len(self._slots) < 2:
                    break  # only the active slot; nothing replaceable
                worst = self._slots[-1]
                score = switch_score(
                    worst.quality,
                    result.candidate.quality,
                    FRESH_VERIFICATIONS,
                    self.params,
                )
                if score <= 0.0:
                    continue
                self._slots.pop()
                slot = self._admit(result, now)
                self._log("refill", slot.candidate.id, now, score=score)
                admitted += 1
            self._sort_standbys()
        return admitted

    def evaluate_upgrade(self, now: float) -> tuple[int, float] | None:
        """Maybe swap the active stream for its best-scoring standby.

        Scores every standby against the active stream; the highest strictly
        positive score wins (ties go to the lower slot index).  Returns the
        pre-swap standby index and its score, or None for no switch.
        """
        self._require(ReservoirState.MAINTAIN)
        best_index = None
        best_score = 0.0
        for index, slot in enumerate(self._slots[1:], start=1):
            score = switch_score(
                self.active.quality, slot.quality, slot.verified_count, self.params
            )
            if score > 0.0 and (best_index is None or score > best_score):
                best_index = index
                best_score = score
        if best_index is None:
            return None
        self._transition(ReservoirState.TRANSITION)
        old_active = self._slots[0]
        promoted = self._slots[best_index]
        self._slots[0], self._slots[best_index] = promoted, old_active
        promoted.prefetched = False
        old_active.prefetched = True
        self.switch_count += 1
        self._sort_standbys()
        self._log("upgrade", promoted.candidate.id, now, score=best_score)
        self._transition(ReservoirState.MAINTAIN)
        return best_index, best_score

    # -- failover ----------------------------------------------------------

    def on_active_failure(self, now: float) -> Slot | None:
        """Drop the dead active stream and promote the best standby.

        Every promotion leaves a vacancy, so the caller should follow up
        with a probe round and refill().  With no standbys left the
        reservoir is depleted and asks for re-acquisition instead.
        Returns the new active slot, or None when depleted.
        """
        self._require(ReservoirState.MAINTAIN)
        self._transition(ReservoirState.TRANSITION)
        failed = self._slots.pop(0)
        self._log("failover", failed.candidate.id, now)
        if self._slots:
            # Standbys are sorted, so the best one is already in front.
            promoted = self._slots[0]
            promoted.prefetched = False
            self._transition(ReservoirState.MAINTAIN)
            return promoted
        self._transition(ReservoirState.DEPLETED)
        self._log("depleted", None, now)
        self._log("reacquire", None, now)
        return None

    def reacquire(self, probe_results: Sequence[ProbeResult], now: float) -> bool:
        """Attempt to restart a depleted reservoir from a fresh probe round.

        On success the machine passes back through the sprint phase and
        returns True; on a fruitless round it stays depleted, logs another
        re-acquisition request, and returns False.
        """
        self._require(ReservoirState.DEPLETED)
        if not probe_results or not any(r.viable for r in probe_results):
            self._log("reacquire", None, now)
            return False
        self._transition(ReservoirState.SPRINT)
        return self._fill(probe_results, now)

    # -- trace -------------------------------------------------------------

    def trace_lines(self) -> Iterator[str]:
        """One event per line: timestamp, kind, slot id, score (tab-separated)."""
        for event in self._events:
            slot_id = event.slot_id if event.slot_id is not None else "-"
            score = f"{event.score:.6f}" if event.score is not None else "-"
            yield f"{event.timestamp:g}\t{event.kind}\t{slot_id}\t{score}"

    # -- internals ---------------------------------------------------------

    def _require(self, state: ReservoirState) -> None:
        if self.state is not state:
            raise RuntimeError(f"operation requires {state.value}, got {self.state.value}")

    def _transition(self, to: ReservoirState) -> None:
        edge = (self.state, to)
        if edge not in LEGAL_TRANSITIONS:
            raise RuntimeError(f"illegal transition {edge[0].value} -> {edge[1].value}")
        self._transitions.append(edge)
        self.state = to

    def _log(
        self, kind: str, slot_id: str | None, now: float, score: float | None = None
    ) -> None:
        if now < self._clock:
            raise ValueError("event timestamps must be non-decreasing")
        self._clock = now
        self._events.append(
            ReservoirEvent(kind=kind, slot_id=slot_id, timestamp=now, score=score)
        )

    def _sort_standbys(self) -> None:
        tail = sorted(self._slots[1:], key=_slot_order)
        self._slots[1:] = tail

    def _index_of(self, slot_id: str) -> int | None:
        for index, slot in enumerate(self._slots):
            if slot.candidate.id == slot_id:
                return index
        return None


def _slot_order(slot: Slot) -> tuple[int, int, int]:
    # Quality descending, then verification count descending, then earlier
    # arrival: the deterministic merit order used everywhere.
    return (-slot.quality, -slot.verified_count, slot.arrival)
