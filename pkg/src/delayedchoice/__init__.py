"""Monte Carlo and analysis tools for delayed-choice interferometry.

Simulate single-photon pulses through a two-path interferometer whose
output is switched open or closed per pulse, estimate the fringe
visibility V and the anticorrelation parameter alpha from the event log,
and test whether a particle-or-wave hidden-variable theory can explain
them.
"""

from .analysis import (
    BayesBounds,
    MeasuredParameters,
    TheoryVerdict,
    Verdict,
    bayes_lower_bounds,
    classify_theory,
    exclusion_region,
    pow_compatible,
    pow_match,
)
from .config import parse_config
from .eventlog import read_event_log, write_event_log
from .experiment import Mode, PulseRecord, RunConfig, run_experiment
from .models import (
    Behavior,
    DetectionOutcome,
    InterferometerConfig,
    InterferometerModel,
    PowParameters,
    SourceModel,
    sample_photon_number,
    simulate_pulse_pow,
    simulate_pulse_qm,
)
from .qrng import PredictabilityEstimate, QrngModel, estimate_predictability, next_choice
from .stats import (
    CountSummary,
    PhaseBin,
    estimate_alpha,
    estimate_visibility_fit,
    estimate_visibility_minmax,
    tally,
)
from .timing import ExperimentGeometry, SpacetimeEvent, experiment_timeline, is_spacelike, required_signal_speed

__version__ = "0.1.0"

__all__ = [
    "BayesBounds",
    "Behavior",
    "CountSummary",
    "DetectionOutcome",
    "ExperimentGeometry",
    "InterferometerConfig",
    "InterferometerModel",
    "MeasuredParameters",
    "Mode",
    "PhaseBin",
    "PowParameters",
    "PredictabilityEstimate",
    "PulseRecord",
    "QrngModel",
    "RunConfig",
    "SourceModel",
    "SpacetimeEvent",
    "TheoryVerdict",
    "Verdict",
    "bayes_lower_bounds",
    "classify_theory",
    "estimate_alpha",
    "estimate_predictability",
    "estimate_visibility_fit",
    "estimate_visibility_minmax",
    "exclusion_region",
    "experiment_timeline",
    "is_spacelike",
    "next_choice",
    "parse_config",
    "pow_compatible",
    "pow_match",
    "read_event_log",
    "required_signal_speed",
    "run_experiment",
    "sample_photon_number",
    "simulate_pulse_pow",
    "simulate_pulse_qm",
    "tally",
    "write_event_log",
]
