from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from fraciter.conjugation import iterate_eval
from fraciter.exceptions import DomainError, UsageError
from fraciter.maps import catalog_get
from fraciter.schroeder import (
    flow_from_koenigs,
    koenigs_series,
    koenigs_velocity,
    parabolic_psi,
    psi_eval,
    psi_residual,
)
from fraciter.series import TruncatedSeries, series_compose
from fraciter.solver import MapSeries, solve_flow_exact, velocity_series

moebius = catalog_get("moebius")
sine = catalog_get("sine")
log2 = catalog_get("logistic", 2.0)

X_WINDOW = np.linspace(0.01, 0.2, 20)


@pytest.fixture(scope="module")
def koenigs2_60():
    return koenigs_series(log2.series(60), 60)


# Koenigs ----------------------------------------------------------------------

def test_logistic2_koenigs_coefficients():
    psi = koenigs_series(log2.series(12), 12)
    assert psi.coeffs == tuple(Fraction(2 ** (k - 1), k) for k in range(1, 13))


def test_linear_map_is_its_own_koenigs_function():
    psi = koenigs_series(MapSeries([Fraction(3), 0, 0, 0]), 4)
    assert psi.coeffs == (1, 0, 0, 0)


@pytest.mark.parametrize("lam", [Fraction(3, 2), Fraction(2), Fraction(3)])
def test_koenigs_equation_exact(lam):
    f = catalog_get("logistic", lam).series(14)
    psi = koenigs_series(f, 14)
    lhs = series_compose(psi.series, TruncatedSeries(f.coeffs))
    assert lhs.coeffs == tuple(lam * b for b in psi.coeffs)


def test_koenigs_rejects_parabolic_map():
    with pytest.raises(UsageError, match="parabolic_psi"):
        koenigs_series(sine.series(5), 5)


def test_koenigs_velocity_logistic2():
    psi = koenigs_series(log2.series(8), 8)
    v = koenigs_velocity(psi, 4)
    ln2 = math.log(2.0)
    assert v.coeffs == pytest.approx([ln2, -ln2, -2 / 3 * ln2, -2 / 3 * ln2], rel=1e-14)


def test_koenigs_velocity_against_finite_difference(koenigs2_60):
    v = koenigs_velocity(koenigs2_60, 60)
    d = 1e-6
    for x in (0.05, 0.1, 0.2):
        fd = (log2.exact_flow(d, x) - x) / d
        assert v(x) == pytest.approx(fd, rel=1e-5)


def test_linear_velocity():
    psi = koenigs_series(MapSeries([2.5, 0.0, 0.0]), 3)
    assert koenigs_velocity(psi).coeffs == pytest.approx([math.log(2.5), 0.0, 0.0])


def test_koenigs_residual_order_30():
    psi = koenigs_series(log2.series(30), 30)
    # truncation-limited: the dropped tail is ~ (2 x_1(x))^31 / 62
    for x in X_WINDOW[X_WINDOW <= 0.1]:
        assert abs(psi_residual(log2, psi, x)) <= 1e-10
    for x in X_WINDOW:
        y = 2 * log2.forward(x)
        tail = y**31 / (62 * (1 - y)) / psi(log2.forward(x))
        assert abs(psi_residual(log2, psi, x)) <= 2 * tail + 1e-15
    # near x = 0.2 the tail, not rounding, dominates
    assert abs(psi_residual(log2, psi, 0.2)) > 1e-8


def test_koenigs_residual_order_60(koenigs2_60):
    for x in X_WINDOW:
        assert abs(psi_residual(log2, koenigs2_60, x)) <= 1e-10


# parabolic expansions ---------------------------------------------------------

def test_moebius_expansion():
    psi = parabolic_psi(velocity_series(solve_flow_exact(moebius.series(6), 6)))
    assert psi.rho == 0 and psi.p[-1] == -1
    assert all(v == 0 for k, v in psi.p.items() if k != -1)
    assert psi.kappa == math.e


def test_sine_expansion():
    psi = parabolic_psi(velocity_series(solve_flow_exact(sine.series(9), 9)))
    assert psi.rho == Fraction(6, 5)
    assert (psi.p[-2], psi.p[2], psi.p[4]) == (3, Fraction(79, 1050), Fraction(29, 2625))
    assert isinstance(psi.rho, Fraction)
    assert min(psi.p) == -2  # m - 1 with m = 3


def test_hand_laurent_example():
    # 1/(x^2 + x^3) = x^-2 - x^-1 + 1 - x + ...
    psi = parabolic_psi(TruncatedSeries([0, 1, 1, 0, 0]))
    assert psi.rho == -1
    assert psi.p == {-1: -1, 1: 1, 2: Fraction(-1, 2)}


def test_parabolic_psi_errors():
    with pytest.raises(UsageError):
        parabolic_psi(TruncatedSeries([0, 0, 0]))
    with pytest.raises(UsageError):
        parabolic_psi(TruncatedSeries([1, 1, 0]))


def test_expansion_matches_closed_moebius_function():
    psi = parabolic_psi(velocity_series(solve_flow_exact(moebius.series(4), 4)))
    for x in (0.05, 0.2, 0.3):
        assert psi_eval(psi, x) == pytest.approx(math.exp(-1 / x), rel=1e-15)


def test_moebius_residuals():
    closed = moebius.schroeder_closed
    psi = parabolic_psi(velocity_series(solve_flow_exact(moebius.series(4), 4)))
    for x in np.linspace(0.05, 0.3, 11):
        assert abs(psi_residual(moebius, closed, x)) <= 1e-13
        assert abs(psi_residual(moebius, psi, x)) <= 1e-13


def test_sine_residual():
    psi = parabolic_psi(velocity_series(solve_flow_exact(sine.series(9), 9)))
    assert abs(psi_residual(sine, psi, 0.3)) <= 1e-6


def test_singular_point():
    psi = parabolic_psi(velocity_series(solve_flow_exact(sine.series(9), 9)))
    with pytest.raises(DomainError):
        psi_eval(psi, 0.0)


# flow reconstruction ----------------------------------------------------------

def test_flow_from_koenigs_examples(koenigs2_60):
    assert flow_from_koenigs(koenigs2_60, 1.0, 0.1) == pytest.approx(0.18, abs=1e-10)
    expected = 0.5 * (1 - 0.8 ** math.sqrt(2))
    assert flow_from_koenigs(koenigs2_60, 0.5, 0.1) == pytest.approx(expected, abs=1e-9)
    assert flow_from_koenigs(koenigs2_60, 0, 0.1234) == 0.1234


@pytest.mark.parametrize("t", [0.25, 0.5, 0.75])
def test_flow_from_koenigs_against_exact_and_conjugation(koenigs2_60, t):
    for x in X_WINDOW:
        y = flow_from_koenigs(koenigs2_60, t, x)
        assert abs(y - log2.exact_flow(t, x)) <= 1e-9
        assert abs(y - iterate_eval(log2, t, x, 9, 7)) <= 1e-8


def test_pure_reversion_is_close(koenigs2_60):
    rough = flow_from_koenigs(koenigs2_60, 0.5, 0.05, refine=False)
    assert rough == pytest.approx(log2.exact_flow(0.5, 0.05), rel=1e-8)
