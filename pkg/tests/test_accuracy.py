from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.special import hyp2f1

from fraciter.accuracy import (
    delta_N,
    epsilon_n,
    extrema_table,
    hyp2f1_unit,
    leading_error_logistic2,
    logistic2_coefficient,
    logistic2_delta,
    radius_estimate,
    relative_error,
    scaling_check,
    successive_difference,
)
from fraciter.conjugation import choose_direction
from fraciter.exceptions import DegenerateError, DomainError, UsageError
from fraciter.maps import catalog_get
from fraciter.solver import solve_flow_exact, solve_flow_numeric

moebius = catalog_get("moebius")
sine = catalog_get("sine")
log2 = catalog_get("logistic", 2.0)


def moebius_error_closed_form(N, n, t, x):
    q = (t * x / (1 + n * x)) ** N
    return (1 - t * x + n * x) / (1 - t * x + n * x * q) * q


def moebius_conjugated(N, n, t, x):
    q = (t * x / (1 + n * x)) ** N
    return x * (1 - q) / (1 - t * x + n * x * q)


# relative errors ------------------------------------------------------------

@pytest.mark.parametrize("N", [2, 4])
@pytest.mark.parametrize("n", [1, 7, 20])
def test_moebius_relative_error_closed_form(N, n):
    for t in (0.1, 0.9):
        for x in (0.05, 0.25, 0.45):
            rec = relative_error(moebius, t, x, N, n)
            assert abs(rec.value - moebius_error_closed_form(N, n, t, x)) <= 1e-12
            assert (rec.x, rec.t, rec.N, rec.n, rec.kind) == (x, t, N, n, "rel_error")


def test_moebius_asymptote():
    N, n, t, x = 3, 1000, 0.5, 0.3
    R = relative_error(moebius, t, x, N, n).value
    assert 0.98 <= R * n ** (N - 1) * (1 - t * x) / (t**N * x) <= 1.02


def test_moebius_power_law_in_n():
    N, t, x = 3, 0.5, 0.3
    r0 = relative_error(moebius, t, x, N, 1000).value
    r1 = relative_error(moebius, t, x, N, 1001).value
    assert r0 / r1 * (1000 / 1001) ** (N - 1) == pytest.approx(1.0, abs=1e-2)


def test_exact_flow_gives_zero_error():
    for x in (0.1, 0.3):
        rec = relative_error(log2, 0.5, x, 5, 3, flow=log2.exact_flow)
        assert abs(rec.value) < 1e-15
        assert abs(successive_difference(log2, 0.5, x, 5, 3, flow=log2.exact_flow).value) < 1e-15


def test_relative_error_needs_closed_form():
    with pytest.raises(UsageError):
        relative_error(sine, 0.5, 1.0, 9, 5)
    with pytest.raises(DegenerateError):
        relative_error(moebius, 0.5, 0.0, 3, 2)


# successive differences -----------------------------------------------------

def test_moebius_successive_difference_closed_form():
    a10, a9 = moebius_conjugated(3, 10, 0.5, 0.3), moebius_conjugated(3, 9, 0.5, 0.3)
    got = successive_difference(moebius, 0.5, 0.3, 3, 10).value
    assert got == pytest.approx((a10 - a9) / a10, rel=1e-9)


def test_sine_successive_differences_decrease():
    xs = np.linspace(0.1, 2 * math.pi, 60)
    s4 = max(abs(successive_difference(sine, 0.5, x, 9, 4).value) for x in xs)
    s5 = max(abs(successive_difference(sine, 0.5, x, 9, 5).value) for x in xs)
    assert s5 < s4


def test_successive_difference_needs_n():
    with pytest.raises(UsageError):
        successive_difference(sine, 0.5, 1.0, 9, 0)


# delta_N, eps_n -----------------------------------------------------------------

@pytest.mark.parametrize("t", [0.25, 0.5, 0.75])
def test_delta_small_x_limit_is_next_coefficient(t):
    assert delta_N(log2, t, 1e-3, 2) == pytest.approx(logistic2_coefficient(3, t), rel=1e-2)


@pytest.mark.parametrize("t", [0.25, 0.5, 1.0])
@pytest.mark.parametrize("N", [1, 3, 5])
def test_delta_matches_hypergeometric_form(t, N):
    for x in (0.1, 0.25, 0.4):
        direct = delta_N(log2, t, x, N)
        closed = logistic2_delta(x, t, N)
        # the direct form cancels: rounding in x_t is magnified by x^-(N+1)
        noise = 1e-15 / x ** (N + 1)
        assert direct == pytest.approx(closed, rel=1e-8, abs=noise)


def test_logistic2_coefficient_matches_solver():
    flow = solve_flow_numeric(log2.series(12), 0.3, 12)
    for k in range(1, 13):
        assert logistic2_coefficient(k, 0.3) == pytest.approx(flow.coefficient(k), rel=1e-13)


def test_epsilon_at_the_critical_point():
    for t in (0.25, 0.5):
        for n in (1, 4, 7):
            assert epsilon_n(log2, t, 0.5, n) == pytest.approx(2.0 ** (n - t - 1), rel=1e-14)


def test_epsilon_is_x_to_first_order():
    for t in (0.25, 0.75):
        for n in (2, 6):
            assert abs(epsilon_n(log2, t, 1e-6, n) / 1e-6 - 1) <= 1e-4


def test_epsilon_needs_hyperbolic_map():
    with pytest.raises(UsageError):
        epsilon_n(moebius, 0.5, 0.1, 3)


# hypergeometric ---------------------------------------------------------------

@pytest.mark.parametrize("b,c", [(3.6, 7.0), (4.2, 6.0), (-1.0, 3.0), (0.5, 1.5)])
def test_hyp2f1_against_scipy(b, c):
    for z in (0.0, 0.1, 0.5, 0.9, -0.7):
        assert hyp2f1_unit(b, c, z) == pytest.approx(hyp2f1(1.0, b, c, z), rel=1e-13)


def test_hyp2f1_stable_under_tighter_tolerance():
    for z in (0.2, 0.8, 0.98):
        a = hyp2f1_unit(5.6, 7.0, z)
        assert abs(hyp2f1_unit(5.6, 7.0, z, rtol=5e-19) - a) <= 1e-14 * abs(a)


def test_hyp2f1_domain():
    assert hyp2f1_unit(2.0, 3.0, 0.0) == 1.0
    with pytest.raises(DomainError):
        hyp2f1_unit(2.0, 3.0, 1.0)


# leading error ----------------------------------------------------------------

@pytest.mark.parametrize("t", [0.5, 0.75])
def test_leading_error_tracks_exact(t):
    xs = np.linspace(0.01, 0.49, 49)
    R = np.array([relative_error(log2, t, x, 5, 5).value for x in xs])
    L = np.array([leading_error_logistic2(t, x, 5, 5) for x in xs])
    assert np.max(np.abs(R - L)) <= 0.05 * np.max(np.abs(R))


def test_leading_error_vanishes_at_half():
    peak = max(abs(leading_error_logistic2(0.5, x, 5, 5)) for x in np.linspace(0.01, 0.49, 49))
    assert abs(leading_error_logistic2(0.5, 0.5 - 1e-12, 5, 5)) < 1e-6 * peak


def test_leading_error_domain():
    with pytest.raises(DomainError):
        leading_error_logistic2(0.5, 0.5, 5, 5)


# scaling law ------------------------------------------------------------------

@pytest.mark.parametrize("t", [0.5, 0.75])
def test_scaling_law_where_error_is_resolved(t):
    for x in (0.25, 0.35, 0.45):
        assert 0.8 <= scaling_check(log2, t, x, 5, 5) <= 1.2


@pytest.mark.parametrize("t", [0.5, 0.75])
def test_scaling_law_from_leading_formula(t):
    # at small x the exact R underflows to rounding; the leading formula
    # carries the law there
    for x in np.linspace(0.01, 0.45, 12):
        for n in (5, 6):
            ratio = 2**5 * leading_error_logistic2(t, x, 5, n + 1) / leading_error_logistic2(t, x, 5, n)
            assert 0.8 <= ratio <= 1.2


def test_scaling_check_degenerate_for_exact_flow():
    with pytest.raises(DegenerateError):
        scaling_check(log2, 0.5, 0.2, 5, 5, flow=log2.exact_flow)


# radius -------------------------------------------------------------------------

def test_radius_of_moebius_flow():
    flow = solve_flow_exact(moebius.series(20), 20)
    for k, est in radius_estimate(flow, 0.5, range(2, 21)).estimates:
        # 1/|2^(1-k)|^(1/k) = 2^(1-1/k), tending to 2
        assert est == pytest.approx(2.0 ** (1 - 1 / k), rel=1e-14)


def test_radius_skips_zero_coefficients():
    flow = solve_flow_exact(sine.series(11), 11)
    rep = radius_estimate(flow, 0.5, range(1, 12))
    assert rep.skipped == [2, 4, 6, 8, 10]
    assert [k for k, _ in rep.estimates] == [1, 3, 5, 7, 9, 11]


def test_radius_order_guard():
    flow = solve_flow_exact(sine.series(9), 9)
    with pytest.raises(UsageError):
        radius_estimate(flow, 0.5, range(1, 12))


# extrema --------------------------------------------------------------------

def test_extrema_endpoints():
    rows = extrema_table([0.0, 1.0])
    assert rows[0][1] == rows[0][2] == math.pi / 2 and rows[0][3] == 0.0
    assert rows[1][1] == rows[1][2] == 1.0


def test_extrema_quarter():
    t, computed, formula, disc = extrema_table([0.25])[0]
    assert formula == pytest.approx(1.2533141373, abs=1e-10)
    assert abs(disc) <= 5e-3


def test_extrema_rejects_t_outside_unit_interval():
    with pytest.raises(UsageError):
        extrema_table([1.5])


def test_direction_for_error_sweeps():
    assert choose_direction(log2, 0.49).name == "INNER_INVERSE"
