"""Pure-Python versions of the routines in ``_kernels.pyx``.

Same operation order as the compiled module, so results are bit-identical.
"""

from __future__ import annotations

import math

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_TWO_M53 = 1.0 / 9007199254740992.0
_GUARD = 1e-12


def uniform(seed: int, index: int) -> float:
    """Output ``index`` of the standard SplitMix64 stream seeded with ``seed``,
    mapped to (0, 1]."""
    z = (seed + (index + 1) * _GAMMA) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    z ^= z >> 31
    return float((z >> 11) + 1) * _TWO_M53


def gfloor(x: float) -> float:
    """floor(x), except values within 1e-12 relative of an integer >= 1 snap to it."""
    r = float(round(x))
    if r >= 1.0 and abs(x - r) <= _GUARD * r:
        return r
    return float(math.floor(x))


def single_cycle(t_s, t_r, t_e, t_c, depth, fault):
    valid = float(math.floor(fault / t_c))
    done = float(math.floor((fault + t_e) / t_c))
    oldest = max(done - depth + 1.0, 1.0)
    wall = fault + t_e + t_r
    if valid >= oldest:
        return wall, valid * (t_c - t_s), False
    return wall, 0.0, True


def simulate_cycles(seed, start, count, t_f, t_s, t_r, t_e, t_c, depth):
    wall = np.empty(count, dtype=np.float64)
    ret = np.empty(count, dtype=np.float64)
    rst = np.empty(count, dtype=bool)
    for i in range(count):
        fault = -t_f * math.log(uniform(seed, start + i))
        wall[i], ret[i], rst[i] = single_cycle(t_s, t_r, t_e, t_c, depth, fault)
    return wall, ret, rst


def _gfloor_array(x: np.ndarray) -> np.ndarray:
    r = np.rint(x)
    snap = (r >= 1.0) & (np.abs(x - r) <= _GUARD * r)
    return np.where(snap, r, np.floor(x))


def latency_objectives(t_c, t_f, t_s, t_r, t_e):
    t = np.ascontiguousarray(t_c, dtype=np.float64)
    m = _gfloor_array(t_f / t)
    k = _gfloor_array(t_e / t)
    extra = k * t + t / 2.0 + t_r
    return m * t_s + extra, (t_f - m * t_s) / (t_f + extra)
