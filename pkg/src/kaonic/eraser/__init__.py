"""Monte Carlo quantum-eraser experiments with entangled kaon pairs."""

from .measurements import (
    DEFAULT_CUT,
    ActiveLifetime,
    ActiveStrangeness,
    MeasurementKind,
    PassiveLifetime,
    PassiveStrangeness,
    measure_active_lifetime,
    measure_active_strangeness,
    measure_passive,
    sample_decay_time,
)
from .setups import (
    CLASSES,
    SETUPS,
    ClassTally,
    DelayedChoiceReport,
    EraserConfig,
    EventRecord,
    SetupComparison,
    SortedFrequencies,
    chi_square_equality,
    compare_setups,
    delayed_choice_check,
    generate_events,
    run_setup,
    surviving_pair_reference,
)

__all__ = [
    "DEFAULT_CUT",
    "ActiveLifetime",
    "ActiveStrangeness",
    "MeasurementKind",
    "PassiveLifetime",
    "PassiveStrangeness",
    "measure_active_lifetime",
    "measure_active_strangeness",
    "measure_passive",
    "sample_decay_time",
    "CLASSES",
    "SETUPS",
    "ClassTally",
    "DelayedChoiceReport",
    "EraserConfig",
    "EventRecord",
    "SetupComparison",
    "SortedFrequencies",
    "chi_square_equality",
    "compare_setups",
    "delayed_choice_check",
    "generate_events",
    "run_setup",
    "surviving_pair_reference",
]
