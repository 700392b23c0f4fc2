"""streamres: a k-slot reservoir of verified streams.

Acquire candidate streams concurrently, keep the best k alive as verified
standbys, refill lazily as they fail, and switch the active stream only when
a prospect-weighted score says the upgrade is worth the interruption.  Ships
with closed-form reliability analytics, seeded Monte Carlo experiments, and
a CLI verification registry.
"""

from .analytics import (
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
from .cli import CheckResult, VerifyReport, main, run_verify
from .probe import (
    HttpTransport,
    ProbeResult,
    SimTransport,
    StreamCandidate,
    probe_all,
    simulated_makespan,
    sort_results,
)
from .prospect import (
    DEFAULT_PARAMS,
    ProspectParams,
    confidence,
    switch_score,
    value,
    weight,
)
from .reservoir import (
    LEGAL_TRANSITIONS,
    Reservoir,
    ReservoirEvent,
    ReservoirState,
    Slot,
)
from .simulator import (
    DepletionConfig,
    DepletionResult,
    MonotonicityConfig,
    TrialSummary,
    run_depletion,
    run_monotonicity,
    run_speedup_empirical,
    run_thrash,
)
from .viability import Rng, ViabilityModel, sample_failure_time, step_viable

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "DEFAULT_PARAMS",
    "DepletionConfig",
    "DepletionResult",
    "HttpTransport",
    "LEGAL_TRANSITIONS",
    "MarkovRates",
    "MonotonicityConfig",
    "ProbeResult",
    "ProspectParams",
    "Reservoir",
    "ReservoirEvent",
    "ReservoirState",
    "Rng",
    "SimTransport",
    "Slot",
    "SpeedupScenario",
    "StreamCandidate",
    "TrialSummary",
    "VerifyReport",
    "ViabilityModel",
    "batched_speedup",
    "censored_depletion_mean",
    "confidence",
    "expected_max_exponential",
    "expected_time_batched",
    "expected_time_concurrent",
    "harmonic_number",
    "interruption_probability",
    "main",
    "no_thrash_bound",
    "probe_all",
    "run_depletion",
    "run_monotonicity",
    "run_speedup_empirical",
    "run_thrash",
    "run_verify",
    "sample_failure_time",
    "simulated_makespan",
    "sort_results",
    "stationary_availability",
    "step_viable",
    "switch_score",
    "utility_estimate",
    "value",
    "weight",
    "__version__",
]
