"""Named reproduction experiments and their reports."""
from .cases import case12_nested_discriminants, case3_thresholds
from .experiments import REGISTRY, Experiment
from .runner import DEFAULT_SEED, Report, SuiteResult, run_experiment, run_suite

__all__ = [
    "case12_nested_discriminants", "case3_thresholds", "REGISTRY", "Experiment",
    "DEFAULT_SEED", "Report", "SuiteResult", "run_experiment", "run_suite",
]
