"""Optimal checkpoint intervals under failures and detection latency."""

from ._backend import DEFAULT as BACKEND
from .analytic import (
    Method,
    Objective,
    Optimum,
    availability,
    availability_slope,
    lost_time,
    lost_time_slope,
    optimal_tc_availability,
    optimal_tc_lost_time,
)
from .piecewise import (
    Breakpoint,
    BreakpointSource,
    SweepModel,
    SweepPoint,
    SweepSeries,
    availability_latency,
    breakpoints,
    grid_scan,
    lost_time_latency,
    optimize_piecewise,
    sweep,
)
from .simulator import SimConfig, SimResult, compare_with_model, run_trials, single_cycle
from .units import (
    DomainError,
    ModelError,
    ModelParams,
    ParseError,
    ValidationError,
    format_duration,
    parse_duration,
    validate_params,
)

__all__ = [
    "BACKEND",
    "Breakpoint",
    "BreakpointSource",
    "DomainError",
    "Method",
    "ModelError",
    "ModelParams",
    "Objective",
    "Optimum",
    "ParseError",
    "SimConfig",
    "SimResult",
    "SweepModel",
    "SweepPoint",
    "SweepSeries",
    "ValidationError",
    "availability",
    "availability_latency",
    "availability_slope",
    "breakpoints",
    "compare_with_model",
    "format_duration",
    "grid_scan",
    "lost_time",
    "lost_time_latency",
    "lost_time_slope",
    "optimal_tc_availability",
    "optimal_tc_lost_time",
    "optimize_piecewise",
    "parse_duration",
    "run_trials",
    "single_cycle",
    "sweep",
    "validate_params",
]
