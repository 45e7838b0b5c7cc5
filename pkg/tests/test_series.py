from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fraciter.exceptions import DegenerateError, NumericRangeError, UsageError
from fraciter.series import (
    TPoly,
    TruncatedSeries,
    format_tpoly,
    series_add,
    series_compose,
    series_eval,
    series_mul,
    series_revert,
    tpoly_eval,
)

small_q = st.fractions(min_value=-3, max_value=3, max_denominator=7)


def rational_series(order, first_nonzero=False):
    head = small_q.filter(bool) if first_nonzero else small_q
    return st.tuples(head, st.lists(small_q, min_size=order - 1, max_size=order - 1)).map(
        lambda p: TruncatedSeries([p[0]] + p[1])
    )


# TPoly ----------------------------------------------------------------------

def test_tpoly_strips_trailing_zeros():
    assert TPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert TPoly([0, 0]).coeffs == ()


def test_tpoly_arithmetic_and_eval():
    p = TPoly([0, 1])  # t
    q = p * p - TPoly([Fraction(1, 2)])
    assert q(Fraction(3)) == Fraction(17, 2)
    assert tpoly_eval(q, 0.5) == pytest.approx(-0.25)


def test_tpoly_rejects_floats():
    with pytest.raises(UsageError):
        TPoly([0.5])


def test_format_tpoly():
    assert format_tpoly(TPoly([0, 0, 0, 1])) == "t^3"
    assert format_tpoly(TPoly([0, Fraction(-1, 30), Fraction(1, 24)])) == "1/24*t^2 - 1/30*t"
    assert format_tpoly(TPoly()) == "0"


# arithmetic -----------------------------------------------------------------

def test_geometric_series_product():
    g = TruncatedSeries([1] * 6)  # x/(1-x)
    sq = series_mul(g, g)
    # x^2/(1-x)^2 = sum (k-1) x^k
    assert sq.coeffs == tuple(Fraction(k - 1) for k in range(1, 7))


def test_compose_moebius_with_itself():
    f = TruncatedSeries([1] * 8)  # x/(1-x)
    ff = series_compose(f, f)  # x/(1-2x)
    assert ff.coeffs == tuple(Fraction(2) ** (k - 1) for k in range(1, 9))


def test_mixed_kinds_rejected():
    a = TruncatedSeries([Fraction(1), Fraction(1)])
    b = TruncatedSeries([1.0, 1.0])
    with pytest.raises(UsageError):
        series_add(a, b)


def test_revert_sine_gives_arcsine():
    s = TruncatedSeries([Fraction((-1) ** (k // 2), math.factorial(k)) if k % 2 else 0
                         for k in range(1, 10)])
    r = series_revert(s)
    # arcsin x = x + x^3/6 + 3x^5/40 + 5x^7/112 + 35x^9/1152
    assert r.coeffs == (1, 0, Fraction(1, 6), 0, Fraction(3, 40), 0,
                        Fraction(5, 112), 0, Fraction(35, 1152))


def test_revert_zero_linear_term():
    with pytest.raises(DegenerateError):
        series_revert(TruncatedSeries([0, 1, 1]))


def test_eval_needs_t_for_polynomial_series():
    s = TruncatedSeries([TPoly([1]), TPoly([0, 1])], kind="tpoly")
    with pytest.raises(UsageError):
        series_eval(s, 0.1)
    assert series_eval(s, 0.1, t=2.0) == pytest.approx(0.12)


def test_eval_overflow_is_reported():
    with pytest.raises(NumericRangeError):
        series_eval(TruncatedSeries([1.0, 1e308]), 1e10)


# properties -----------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(rational_series(6, first_nonzero=True))
def test_revert_round_trip_exact(f):
    r = series_revert(f)
    ident = TruncatedSeries.identity(6)
    assert series_compose(f, r).coeffs == ident.coeffs
    assert series_compose(r, f).coeffs == ident.coeffs


@settings(max_examples=60, deadline=None)
@given(rational_series(5), rational_series(5), rational_series(5))
def test_compose_is_associative(f, g, h):
    left = series_compose(series_compose(f, g), h)
    right = series_compose(f, series_compose(g, h))
    assert left.coeffs == right.coeffs


@settings(max_examples=60, deadline=None)
@given(rational_series(5), rational_series(5), rational_series(5))
def test_composition_distributes_on_the_left(f, g, h):
    # (f + g) o h = f o h + g o h
    assert series_compose(series_add(f, g), h).coeffs == series_add(
        series_compose(f, h), series_compose(g, h)
    ).coeffs


@settings(max_examples=40, deadline=None)
@given(rational_series(5), small_q)
def test_eval_agrees_with_float_conversion(f, x):
    x = Fraction(x) / 4
    exact = sum(c * x**k for k, c in enumerate(f.coeffs, start=1))
    assert series_eval(f.to_float(), float(x)) == pytest.approx(float(exact), abs=1e-12)
