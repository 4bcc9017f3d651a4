"""Lost time and availability with error-detection latency.

With a detection latency ``t_e`` the per-failure loss picks up
``floor(t_e/t_c) * t_c`` and the save count becomes ``floor(t_f/t_c)``.
Both floors jump at ``t_f/k`` and ``t_e/k``, so the objectives are only
piecewise smooth and are optimized by enumerating continuity segments.

Floors are evaluated with a 1e-12 relative guard band so that round inputs
such as ``t_c = t_e = 120 s`` land on the integer deterministically.
"""

from __future__ import annotations

import io
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import TextIO

import numpy as np

from . import _backend
from ._fallback import _gfloor_array, gfloor
from .analytic import Method, Objective, Optimum, availability, lost_time
from .units import DomainError, ModelParams, check_tc, validate_params

MAX_SEGMENTS = 10**6
DEDUP_RTOL = 1e-12
# open segment edges are reported this far inside the segment
EDGE_NUDGE = 1e-9
SWEEP_HEADER = "t_c_minutes,lost_time_minutes,availability"


class BreakpointSource(str, Enum):
    FAILURE_TERM = "failure_term"
    LATENCY_TERM = "latency_term"


class SweepModel(str, Enum):
    CONTINUOUS = "continuous"
    WITH_LATENCY = "with_latency"


@dataclass(frozen=True)
class Breakpoint:
    t_c: float
    source: BreakpointSource
    k: int


@dataclass(frozen=True)
class SweepPoint:
    t_c: float
    lost_time: float
    availability: float


@dataclass(frozen=True)
class SweepSeries:
    points: tuple[SweepPoint, ...]
    params: ModelParams
    model: SweepModel

    def write_csv(self, out: TextIO) -> None:
        out.write(SWEEP_HEADER + "\n")
        for pt in self.points:
            out.write(f"{pt.t_c / 60:.9g},{pt.lost_time / 60:.9g},{pt.availability:.9g}\n")

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def lost_time_latency(p: ModelParams, t_c: float) -> float:
    check_tc(t_c)
    m = gfloor(p.t_f / t_c)
    k = gfloor(p.t_e / t_c)
    return m * p.t_s + (k * t_c + t_c / 2.0 + p.t_r)


def availability_latency(p: ModelParams, t_c: float) -> float:
    check_tc(t_c)
    m = gfloor(p.t_f / t_c)
    k = gfloor(p.t_e / t_c)
    return (p.t_f - m * p.t_s) / (p.t_f + (k * t_c + t_c / 2.0 + p.t_r))


def _check_domain(lo: float, hi: float, allow_point: bool = False) -> None:
    ok = math.isfinite(lo) and math.isfinite(hi) and lo > 0
    ok = ok and (lo <= hi if allow_point else lo < hi)
    if not ok:
        raise DomainError(f"invalid t_c domain [{lo!r}, {hi!r}]")


def _term_breaks(a: float, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    """Locations a/k inside [lo, hi] and their k, ascending in location."""
    if a <= 0 or a / lo < 1.0 - DEDUP_RTOL:
        return np.empty(0), np.empty(0, dtype=np.int64)
    k_lo = max(1, math.floor(a / hi) - 1)
    k_hi = math.ceil(a / lo) + 1
    k = np.arange(k_hi, k_lo - 1, -1, dtype=np.int64)
    loc = a / k.astype(np.float64)
    keep = (loc > lo * (1 + DEDUP_RTOL)) & (loc <= hi * (1 + DEDUP_RTOL))
    return loc[keep], k[keep]


def _segment_count(p: ModelParams, lo: float, hi: float) -> int:
    n = p.t_f / lo - p.t_f / hi + 2
    if p.t_e > 0:
        n += p.t_e / lo - p.t_e / hi + 2
    return int(n)


def _breakpoint_arrays(p: ModelParams, lo: float, hi: float):
    f_loc, f_k = _term_breaks(p.t_f, lo, hi)
    l_loc, l_k = _term_breaks(p.t_e, lo, hi)
    loc = np.concatenate([l_loc, f_loc])
    k = np.concatenate([l_k, f_k])
    src = np.concatenate([np.ones(len(l_loc), bool), np.zeros(len(f_loc), bool)])
    # stable sort keeps the latency entry first at coincident locations
    order = np.argsort(loc, kind="stable")
    loc, k, src = loc[order], k[order], src[order]
    if len(loc) > 1:
        keep = np.ones(len(loc), bool)
        keep[1:] = np.diff(loc) > DEDUP_RTOL * loc[1:]
        loc, k, src = loc[keep], k[keep], src[keep]
    return loc, k, src


def breakpoints(p: ModelParams, domain: tuple[float, float]) -> list[Breakpoint]:
    """Every jump location of the floor terms in ``(t_lo, t_hi]``, ascending."""
    lo, hi = domain
    _check_domain(lo, hi)
    loc, k, src = _breakpoint_arrays(p, lo, hi)
    return [
        Breakpoint(
            float(x),
            BreakpointSource.LATENCY_TERM if s else BreakpointSource.FAILURE_TERM,
            int(kk),
        )
        for x, kk, s in zip(loc, k, src)
    ]


def default_domain(p: ModelParams, t_hi: float | None = None) -> tuple[float, float]:
    hi = p.t_f if t_hi is None else min(p.t_f, t_hi)
    return max(p.t_s, 1.0), hi


def _evaluate(p: ModelParams, t: np.ndarray, objective: Objective) -> np.ndarray:
    lost, av = _backend.kernels.latency_objectives(
        np.ascontiguousarray(t, dtype=np.float64), p.t_f, p.t_s, p.t_r, p.t_e
    )
    return lost if objective is Objective.LOST_TIME else av


def grid_scan(
    p: ModelParams,
    objective: Objective | str,
    domain: tuple[float, float] | None = None,
    step: float | None = None,
) -> Optimum:
    """Brute-force optimum over a uniform grid (default step: 1e-3 of the width)."""
    objective = Objective(objective)
    validate_params(p, for_optimization=True)
    lo, hi = default_domain(p) if domain is None else domain
    _check_domain(lo, hi, allow_point=True)
    width = hi - lo
    if step is None:
        step = width * 1e-3
    if width > 0 and not step > 0:
        raise DomainError(f"grid step must be positive, got {step!r}")
    n = int(math.floor(width / step + 1e-9)) if width > 0 else 0
    t = lo + np.arange(n + 1, dtype=np.float64) * (step if width > 0 else 0.0)
    vals = _evaluate(p, t, objective)
    i = int(np.argmin(vals) if objective is Objective.LOST_TIME else np.argmax(vals))
    return Optimum(float(t[i]), float(vals[i]), objective, Method.GRID_SCAN)


def optimize_piecewise(
    p: ModelParams,
    objective: Objective | str,
    domain: tuple[float, float] | None = None,
    method: Method | str = Method.SEGMENT_ENUMERATION,
    grid_step: float | None = None,
) -> Optimum:
    """Global optimum of the floor-term objective over ``domain``.

    On each segment between breakpoints both floors are constant, lost time
    increases with ``t_c`` and availability decreases (while the useful-work
    numerator is positive), so the best value of a segment is its limit at
    the left edge. That limit is computed by substituting the segment's
    floor counts at the edge. An open edge is not attained, so its reported
    location sits ``EDGE_NUDGE`` (relative) inside the segment.
    """
    objective = Objective(objective)
    method = Method(method)
    validate_params(p, for_optimization=True)
    lo, hi = default_domain(p) if domain is None else domain
    _check_domain(lo, hi, allow_point=True)
    if method is Method.GRID_SCAN:
        return grid_scan(p, objective, (lo, hi), grid_step)
    if method is not Method.SEGMENT_ENUMERATION:
        raise ValueError(f"unsupported method {method.value!r}")
    if _segment_count(p, lo, hi) > MAX_SEGMENTS:
        warnings.warn(
            f"more than {MAX_SEGMENTS} segments in [{lo}, {hi}]; using grid scan",
            RuntimeWarning,
            stacklevel=2,
        )
        return grid_scan(p, objective, (lo, hi), grid_step)

    cand_t, cand_v = segment_candidates(p, objective, lo, hi)
    i = int(np.argmin(cand_v) if objective is Objective.LOST_TIME else np.argmax(cand_v))
    return Optimum(float(cand_t[i]), float(cand_v[i]), objective, Method.SEGMENT_ENUMERATION)


def segment_candidates(
    p: ModelParams, objective: Objective, lo: float, hi: float
) -> tuple[np.ndarray, np.ndarray]:
    """Best (location, value) of every continuity segment in ``[lo, hi]``.

    The first entry is ``lo`` itself and the last is ``hi``; in between,
    one entry per segment in ascending order.
    """
    objective = Objective(objective)
    loc, _, _ = _breakpoint_arrays(p, lo, hi)
    inner = loc[(loc > lo * (1 + DEDUP_RTOL)) & (loc < hi * (1 - DEDUP_RTOL))]
    ends = _evaluate(p, np.array([lo, hi]), objective)
    if not hi > lo:
        return np.array([lo]), ends[:1]
    a = np.concatenate([[lo], inner])
    b = np.concatenate([inner, [hi]])
    m = _gfloor_array(p.t_f / b)
    k = _gfloor_array(p.t_e / b)
    extra = k * a + a / 2.0 + p.t_r
    inside = np.minimum(a * (1 + EDGE_NUDGE), (a + b) / 2)
    if objective is Objective.LOST_TIME:
        limits = m * p.t_s + extra
        where = inside
    else:
        num = p.t_f - m * p.t_s
        limits = num / (p.t_f + extra)
        # non-positive numerator: availability rises across the segment
        rising = num <= 0
        if rising.any():
            limits = np.where(rising, _evaluate(p, b, objective), limits)
        where = np.where(rising, b, inside)
    cand_t = np.concatenate([[lo], where, [hi]])
    cand_v = np.concatenate([ends[:1], limits, ends[1:]])
    return cand_t, cand_v


def sweep(
    p: ModelParams,
    model: SweepModel | str,
    domain: tuple[float, float],
    step: float,
) -> SweepSeries:
    """Sample both objectives at ``t_lo, t_lo + step, ...`` up to ``t_hi``."""
    model = SweepModel(model)
    validate_params(p)
    lo, hi = domain
    _check_domain(lo, hi, allow_point=True)
    if not (step > 0 and math.isfinite(step)):
        raise DomainError(f"sweep step must be positive, got {step!r}")
    n = int(math.floor((hi - lo) / step + 1e-9))
    t = lo + np.arange(n + 1, dtype=np.float64) * step
    if model is SweepModel.WITH_LATENCY:
        lost, av = _backend.kernels.latency_objectives(t, p.t_f, p.t_s, p.t_r, p.t_e)
        rows = zip(t.tolist(), lost.tolist(), av.tolist())
    else:
        ts = t.tolist()
        rows = zip(ts, (lost_time(p, x) for x in ts), (availability(p, x) for x in ts))
    return SweepSeries(tuple(SweepPoint(*r) for r in rows), p, model)
