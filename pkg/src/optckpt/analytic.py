"""Closed-form lost-time and availability models.

Both models assume detection latency is negligible, so ``p.t_e`` is ignored
here; see :mod:`optckpt.piecewise` for the latency-aware versions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum

from .units import ModelParams, check_tc, validate_params


class Objective(str, Enum):
    LOST_TIME = "lost_time"
    AVAILABILITY = "availability"


class Method(str, Enum):
    CLOSED_FORM = "closed_form"
    SEGMENT_ENUMERATION = "segment_enumeration"
    GRID_SCAN = "grid_scan"


@dataclass(frozen=True)
class Optimum:
    """A recommended checkpoint interval.

    ``objective_value`` is seconds for lost time and a fraction for
    availability.
    """

    t_c_opt: float
    objective_value: float
    objective_kind: Objective
    method: Method


def lost_time(p: ModelParams, t_c: float) -> float:
    """Wasted time per failure: save overhead + mean residual + recovery."""
    check_tc(t_c)
    return p.t_f / t_c * p.t_s + t_c / 2 + p.t_r


def lost_time_slope(p: ModelParams, t_c: float) -> float:
    check_tc(t_c)
    return -p.t_f * p.t_s / (t_c * t_c) + 0.5


def optimal_tc_lost_time(p: ModelParams) -> Optimum:
    validate_params(p, for_optimization=True)
    t_c = math.sqrt(2 * p.t_f * p.t_s)
    return Optimum(t_c, lost_time(p, t_c), Objective.LOST_TIME, Method.CLOSED_FORM)


def availability(p: ModelParams, t_c: float) -> float:
    """Fraction of time doing useful work.

    Not clamped: ``t_c < t_s`` gives a negative value.
    """
    check_tc(t_c)
    return (p.t_f - p.t_f * p.t_s / t_c) / (p.t_f + t_c / 2 + p.t_r)


def availability_slope(p: ModelParams, t_c: float) -> float:
    """d(availability)/d(t_c), per second."""
    check_tc(t_c)
    denom = t_c / 2 + p.t_f + p.t_r
    save = p.t_f * p.t_s
    return (save / (t_c * t_c)) / denom + (save / t_c - p.t_f) / (2 * denom * denom)


def optimal_tc_availability(p: ModelParams) -> Optimum:
    validate_params(p, for_optimization=True)
    t_c = p.t_s + math.sqrt(2 * (p.t_f + p.t_r) * p.t_s + p.t_s * p.t_s)
    return Optimum(t_c, availability(p, t_c), Objective.AVAILABILITY, Method.CLOSED_FORM)


def round_display(x: float, places: int = 2) -> Decimal:
    """Round half away from zero, on the shortest decimal repr of ``x``."""
    return Decimal(repr(x)).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)
