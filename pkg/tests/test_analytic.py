import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    HOUR,
    MIN,
    exact_availability,
    exact_lost_time,
    random_params,
    richardson_slope,
)
from optckpt.analytic import (
    Method,
    Objective,
    availability,
    availability_slope,
    lost_time,
    lost_time_slope,
    optimal_tc_availability,
    optimal_tc_lost_time,
    round_display,
)
from optckpt.units import DomainError, ModelParams, ValidationError

params_st = st.builds(
    ModelParams,
    t_f=st.floats(0.5 * HOUR, 48 * HOUR),
    t_s=st.floats(0.1, 120.0),
    t_r=st.floats(0.0, 30 * MIN),
)


# --- lost time -------------------------------------------------------------


def test_lost_time_residual_only():
    assert lost_time(ModelParams(100, 0, 0), 10) == 5


def test_lost_time_hand_substitution(base_params):
    expected = exact_lost_time(3600, 1, 240, 84.8528)
    assert lost_time(base_params, 84.8528) == pytest.approx(float(expected), rel=1e-15)
    assert float(expected) == pytest.approx(324.853, abs=5e-4)


def test_lost_time_terms_balance_at_optimum(base_params):
    t = math.sqrt(7200)
    assert base_params.t_f * base_params.t_s / t == pytest.approx(t / 2, rel=1e-15)


def test_lost_time_minimizer_sqrt2_minutes(base_params):
    grid = np.arange(0.5 * MIN, 10 * MIN, 0.01)
    vals = [lost_time(base_params, t) for t in grid]
    assert grid[int(np.argmin(vals))] / MIN == pytest.approx(math.sqrt(2), abs=2e-4)


@pytest.mark.parametrize("fn", [lost_time, lost_time_slope, availability, availability_slope])
@pytest.mark.parametrize("t_c", [0.0, -1.0, float("nan")])
def test_domain_errors(fn, t_c, base_params):
    with pytest.raises(DomainError):
        fn(base_params, t_c)


def test_lost_time_slope_root():
    p = ModelParams(3600, 1)
    assert lost_time_slope(p, math.sqrt(7200)) == pytest.approx(0, abs=1e-15)


def test_lost_time_slope_hand_value():
    assert lost_time_slope(ModelParams(3600, 1), 60) == -0.5


def test_lost_time_slope_fd_at_100():
    # plain central FD at h = 1e-3 t_c carries a truncation bias of
    # (t_f t_s / t_c^2)(h/t_c)^2 = 3.6e-7 here; Richardson removes it
    p = ModelParams(3600, 1, 240)
    s = lost_time_slope(p, 100)
    fd = richardson_slope(lambda t: lost_time(p, t), 100, 0.1)
    assert fd == pytest.approx(s, rel=1e-9)
    plain = (lost_time(p, 100.1) - lost_time(p, 99.9)) / 0.2
    assert plain - s == pytest.approx(-0.36 * 1e-6 / (1 - 1e-6), rel=1e-4)


# --- optimal lost time -----------------------------------------------------


@pytest.mark.parametrize(
    "tf_h, ts_s, minutes",
    [(1, 1, "1.41"), (2, 30, "10.95"), (2, 1, "2.00"), (1, 30, "7.75")],
)
def test_optimal_lost_time_table_values(tf_h, ts_s, minutes):
    # (1, 30) prints 7.74 in the source table; sqrt(60) = 7.7460 rounds to 7.75
    opt = optimal_tc_lost_time(ModelParams(tf_h * HOUR, ts_s))
    assert str(round_display(opt.t_c_opt / MIN)) == minutes


def test_optimal_lost_time_exact_square():
    opt = optimal_tc_lost_time(ModelParams(2, 1))
    assert opt.t_c_opt == 2.0
    assert opt.method is Method.CLOSED_FORM
    assert opt.objective_kind is Objective.LOST_TIME
    assert opt.objective_value == lost_time(ModelParams(2, 1), 2.0)


def test_optimal_requires_positive_ts():
    with pytest.raises(ValidationError, match="t_s must be positive"):
        optimal_tc_lost_time(ModelParams(3600, 0))
    with pytest.raises(ValidationError):
        optimal_tc_availability(ModelParams(3600, 0, 10))


# --- availability ----------------------------------------------------------


def test_availability_no_save():
    assert availability(ModelParams(1000, 0, 0), 2) == pytest.approx(1000 / 1001, rel=1e-15)


def test_availability_hand_substitution(base_params):
    expected = float(exact_availability(3600, 1, 240, 88.6436))
    assert expected == pytest.approx(0.9163473, abs=5e-8)
    assert availability(base_params, 88.6436) == pytest.approx(expected, rel=1e-14)


def test_availability_negative_below_ts():
    assert availability(ModelParams(3600, 10, 0), 5) < 0


def test_availability_maximizer_1477(base_params):
    grid = np.arange(0.5 * MIN, 10 * MIN, 0.01)
    vals = [availability(base_params, t) for t in grid]
    assert grid[int(np.argmax(vals))] / MIN == pytest.approx(1.4774, abs=2e-4)


def test_availability_slope_zero_at_optimum(base_params):
    opt = optimal_tc_availability(base_params)
    assert abs(availability_slope(base_params, opt.t_c_opt)) < 1e-12


def test_availability_slope_fd_at_60(base_params):
    s = availability_slope(base_params, 60)
    fd = richardson_slope(lambda t: availability(base_params, t), 60, 0.06)
    assert fd == pytest.approx(s, rel=1e-9)


def test_availability_slope_positive_below_optimum(base_params):
    assert availability_slope(base_params, 30) > 0


@pytest.mark.parametrize(
    "tf_h, ts_s, tr_m, minutes",
    [(1, 1, 4, "1.48"), (1, 30, 16, "9.23"), (2, 30, 16, "12.17")],
)
def test_optimal_availability_table_values(tf_h, ts_s, tr_m, minutes):
    opt = optimal_tc_availability(ModelParams(tf_h * HOUR, ts_s, tr_m * MIN))
    assert str(round_display(opt.t_c_opt / MIN)) == minutes


def test_optimal_availability_1477(base_params):
    opt = optimal_tc_availability(base_params)
    assert opt.t_c_opt / MIN == pytest.approx(1.477, abs=1e-3)
    assert opt.objective_value == availability(base_params, opt.t_c_opt)


def test_optimal_availability_small_integers():
    assert optimal_tc_availability(ModelParams(4, 1, 0)).t_c_opt == 4.0


# --- properties ------------------------------------------------------------


@settings(max_examples=300)
@given(params_st)
def test_stationarity(p):
    lt = optimal_tc_lost_time(p)
    av = optimal_tc_availability(p)
    assert abs(lost_time_slope(p, lt.t_c_opt)) < 1e-9
    assert abs(availability_slope(p, av.t_c_opt)) < 1e-9


@settings(max_examples=300)
@given(params_st)
def test_global_optimality(p):
    lt = optimal_tc_lost_time(p)
    av = optimal_tc_availability(p)
    for d in (0.01, 0.1, 0.5):
        for sign in (-1, 1):
            assert lost_time(p, lt.t_c_opt * (1 + sign * d)) >= lt.objective_value
            assert availability(p, av.t_c_opt * (1 + sign * d)) <= av.objective_value


@settings(max_examples=500)
@given(params_st)
def test_availability_optimum_not_below_lost_time_optimum(p):
    assert optimal_tc_availability(p).t_c_opt >= optimal_tc_lost_time(p).t_c_opt


def test_asymptotic_agreement():
    p = ModelParams(10 * HOUR, 0.1, 1.0)
    ratio = optimal_tc_availability(p).t_c_opt / optimal_tc_lost_time(p).t_c_opt
    assert 1.0 <= ratio < 1.01


def test_ratio_tends_to_one():
    ratios = [
        optimal_tc_availability(ModelParams(HOUR * k, 1.0 / k, 10.0)).t_c_opt
        / optimal_tc_lost_time(ModelParams(HOUR * k, 1.0 / k, 10.0)).t_c_opt
        for k in (1, 10, 100, 1000)
    ]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] - 1 < 1e-3


@given(params_st, st.floats(0.1, 10.0), st.floats(1e-3, 1e3))
def test_scale_invariance(p, rel_tc, k):
    t_c = rel_tc * math.sqrt(2 * p.t_f * p.t_s)
    q = p.scaled(k)
    assert lost_time(q, k * t_c) == pytest.approx(k * lost_time(p, t_c), rel=1e-12)
    assert availability(q, k * t_c) == pytest.approx(availability(p, t_c), rel=1e-12)
    assert optimal_tc_lost_time(q).t_c_opt == pytest.approx(k * optimal_tc_lost_time(p).t_c_opt, rel=1e-12)
    assert optimal_tc_availability(q).t_c_opt == pytest.approx(
        k * optimal_tc_availability(p).t_c_opt, rel=1e-12
    )


def test_slopes_match_richardson_fd_on_random_grid():
    rng = np.random.default_rng(2024)
    for _ in range(500):
        p = random_params(rng)
        t = math.sqrt(2 * p.t_f * p.t_s) * math.exp(rng.uniform(math.log(0.2), math.log(5)))
        h = 1e-3 * t
        fd_l = richardson_slope(lambda x: lost_time(p, x), t, h)
        fd_a = richardson_slope(lambda x: availability(p, x), t, h)
        # scale by the largest term of each derivative; both vanish near the optimum
        l_scale = p.t_f * p.t_s / t**2 + 0.5
        assert abs(fd_l - lost_time_slope(p, t)) < 1e-8 * l_scale
        d = t / 2 + p.t_f + p.t_r
        a_scale = p.t_f * p.t_s / t**2 / d + p.t_f / (2 * d * d)
        assert abs(fd_a - availability_slope(p, t)) < 1e-8 * a_scale


@pytest.mark.parametrize(
    "x, text", [(1.4142135, "1.41"), (1.4773552, "1.48"), (2.005, "2.01"), (2.0, "2.00"), (10.954451, "10.95")]
)
def test_round_display_half_away(x, text):
    assert str(round_display(x)) == text
