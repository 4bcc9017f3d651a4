# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Must stay operation-for-operation identical to
_fallback.py so both backends produce bit-identical results."""

import numpy as np

from libc.math cimport ceil, fabs, floor, log, nearbyint
from libc.stdint cimport uint64_t

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef double TWO_M53 = 1.0 / 9007199254740992.0
cdef double GUARD = 1e-12


cdef inline double _uniform(uint64_t seed, uint64_t index) noexcept nogil:
    cdef uint64_t z = seed + (index + 1) * GAMMA
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    z = z ^ (z >> 31)
    return <double>((z >> 11) + 1) * TWO_M53


cdef inline double _gfloor(double x) noexcept nogil:
    cdef double r = nearbyint(x)
    if r >= 1.0 and fabs(x - r) <= GUARD * r:
        return r
    return floor(x)


cdef inline void _cycle(double t_s, double t_r, double t_e, double t_c,
                        long depth, double fault, double *wall,
                        double *retained, int *restarted) noexcept nogil:
    cdef double valid = floor(fault / t_c)
    cdef double done = floor((fault + t_e) / t_c)
    cdef double oldest = done - depth + 1.0
    if oldest < 1.0:
        oldest = 1.0
    wall[0] = fault + t_e + t_r
    if valid >= oldest:
        retained[0] = valid * (t_c - t_s)
        restarted[0] = 0
    else:
        retained[0] = 0.0
        restarted[0] = 1


def uniform(uint64_t seed, uint64_t index):
    return _uniform(seed, index)


def gfloor(double x):
    return _gfloor(x)


def single_cycle(double t_s, double t_r, double t_e, double t_c, long depth,
                 double fault):
    cdef double wall, retained
    cdef int restarted
    _cycle(t_s, t_r, t_e, t_c, depth, fault, &wall, &retained, &restarted)
    return wall, retained, bool(restarted)


def simulate_cycles(uint64_t seed, uint64_t start, Py_ssize_t count,
                    double t_f, double t_s, double t_r, double t_e,
                    double t_c, long depth):
    """Replay cycles ``start .. start+count-1``; returns (wall, retained, restarted)."""
    wall_arr = np.empty(count, dtype=np.float64)
    ret_arr = np.empty(count, dtype=np.float64)
    rst_arr = np.empty(count, dtype=np.intc)
    cdef double[::1] wall = wall_arr
    cdef double[::1] ret = ret_arr
    cdef int[::1] rst = rst_arr
    cdef Py_ssize_t i
    cdef double fault
    with nogil:
        for i in range(count):
            fault = -t_f * log(_uniform(seed, start + <uint64_t>i))
            _cycle(t_s, t_r, t_e, t_c, depth, fault, &wall[i], &ret[i], &rst[i])
    return wall_arr, ret_arr, rst_arr.astype(bool)


def latency_objectives(double[::1] t_c, double t_f, double t_s, double t_r,
                       double t_e):
    """Floor-term lost time and availability at every ``t_c``."""
    cdef Py_ssize_t n = t_c.shape[0]
    lost_arr = np.empty(n, dtype=np.float64)
    av_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] lost = lost_arr
    cdef double[::1] av = av_arr
    cdef Py_ssize_t i
    cdef double t, m, k, extra
    with nogil:
        for i in range(n):
            t = t_c[i]
            m = _gfloor(t_f / t)
            k = _gfloor(t_e / t)
            extra = k * t + t / 2.0 + t_r
            lost[i] = m * t_s + extra
            av[i] = (t_f - m * t_s) / (t_f + extra)
    return lost_arr, av_arr
