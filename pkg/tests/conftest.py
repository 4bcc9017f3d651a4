import math
from fractions import Fraction

import numpy as np
import pytest

from optckpt.units import ModelParams

HOUR, MIN = 3600.0, 60.0


@pytest.fixture
def base_params():
    """t_f = 1 h, t_s = 1 s, t_r = 4 min."""
    return ModelParams(HOUR, 1.0, 4 * MIN)


def random_params(rng: np.random.Generator, t_e: float = 0.0) -> ModelParams:
    return ModelParams(
        rng.uniform(0.5 * HOUR, 48 * HOUR),
        rng.uniform(0.1, 120.0),
        rng.uniform(0.0, 30 * MIN),
        t_e,
    )


def richardson_slope(f, t: float, h: float) -> float:
    """Central difference with one Richardson step: O(h**4) error."""
    d1 = (f(t + h) - f(t - h)) / (2 * h)
    d2 = (f(t + h / 2) - f(t - h / 2)) / h
    return (4 * d2 - d1) / 3


def exact_lost_time(tf, ts, tr, tc) -> Fraction:
    tf, ts, tr, tc = map(Fraction, (tf, ts, tr, tc))
    return tf / tc * ts + tc / 2 + tr


def exact_availability(tf, ts, tr, tc) -> Fraction:
    tf, ts, tr, tc = map(Fraction, (tf, ts, tr, tc))
    return (tf - tf * ts / tc) / (tf + tc / 2 + tr)


def continuous_optimum(tf, ts) -> float:
    return math.sqrt(2 * tf * ts)
