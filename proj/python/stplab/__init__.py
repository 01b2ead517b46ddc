"""Shrinking target experiments on the circle and torus."""

from ._core import (
    ConfigError,
    DomainError,
    Error,
    PrecisionExhausted,
    __version__,
    classify_support,
    counterexample_radius,
    default_config,
    dist,
    experiments,
    hit_count,
    partial_measure_sum,
    recurrence_times,
    run,
    t_sequence,
    tail_unions,
    union_measure,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "Error",
    "PrecisionExhausted",
    "__version__",
    "classify_support",
    "counterexample_radius",
    "default_config",
    "dist",
    "experiments",
    "hit_count",
    "partial_measure_sum",
    "recurrence_times",
    "run",
    "t_sequence",
    "tail_unions",
    "union_measure",
]
