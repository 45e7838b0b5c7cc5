"""Error analysis for conjugated flow approximants.

Relative errors against closed-form flows, successive differences where no
closed form exists, the truncation defect ``delta_N`` and rescaled deep
preimage ``eps_n`` of the hyperbolic error analysis, the lambda=2 logistic
leading-error formula, scaling-law ratios, root-test radius estimates and
the sine extremum table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .conjugation import (
    ConjugatedApproximant,
    approximant,
    choose_direction,
    conjugate_eval,
    flow_for,
    iterate_eval,
)
from .exceptions import DegenerateError, DomainError, UsageError
from .maps import catalog_get
from .series import series_eval

__all__ = [
    "ErrorRecord",
    "relative_error",
    "successive_difference",
    "delta_N",
    "epsilon_n",
    "hyp2f1_unit",
    "logistic2_coefficient",
    "logistic2_delta",
    "leading_error_logistic2",
    "scaling_check",
    "RadiusReport",
    "radius_estimate",
    "extrema_table",
]

REL_ERROR = "rel_error"
SUCC_DIFF = "succ_diff"
LEADING = "leading_approx"
DELTA_R = "delta_r"


@dataclass(frozen=True)
class ErrorRecord:
    """One error value with the inputs that produced it."""

    x: float
    t: float
    N: int
    n: int
    value: float
    kind: str


def _exact_or_raise(spec, t, x):
    if spec.exact_flow is None:
        raise UsageError(f"map {spec.label()} has no closed-form flow")
    return spec.exact_flow(t, x)


def _approx(spec, t, x, N, n, direction=None, flow=None):
    if flow is not None:
        if direction is None:
            direction = choose_direction(spec, x)
        A = ConjugatedApproximant(spec, flow, n, direction)
    else:
        A = approximant(spec, N, n, t, x, direction)
    return conjugate_eval(A, t, x)


def relative_error(spec, t, x, N, n, direction=None, flow=None):
    """``(x_t(x) - A_{n,t}(x)) / x_t(x)`` against the map's closed-form flow.

    ``flow`` replaces the truncated series by any ``(t, x)`` callable.
    """
    exact = _exact_or_raise(spec, t, x)
    if exact == 0.0:
        raise DegenerateError(f"x_t(x) vanishes at x={x!r}; relative error undefined")
    approx = _approx(spec, t, x, N, n, direction, flow)
    return ErrorRecord(x, t, N, n, (exact - approx) / exact, REL_ERROR)


def successive_difference(spec, t, x, N, n, direction=None, flow=None):
    """``(A_{n,t}(x) - A_{n-1,t}(x)) / A_{n,t}(x)``."""
    if n < 1:
        raise UsageError("successive differences need n >= 1")
    if direction is None:
        direction = choose_direction(spec, x)
    a_n = _approx(spec, t, x, N, n, direction, flow)
    a_prev = _approx(spec, t, x, N, n - 1, direction, flow)
    if a_n == 0.0:
        raise DegenerateError(f"A_n vanishes at x={x!r}")
    return ErrorRecord(x, t, N, n, (a_n - a_prev) / a_n, SUCC_DIFF)


def delta_N(spec, t, x, N):
    """Scaled truncation defect ``(x_t(x) - P_{N,t}(x)) / x**(N+1)``."""
    if x == 0:
        raise DegenerateError("delta_N is defined for x != 0")
    exact = _exact_or_raise(spec, t, x)
    flow = flow_for(spec, N, t)
    p = series_eval(flow.series(t) if flow.is_exact else flow.series(), x)
    return (exact - float(p)) / x ** (N + 1)


def epsilon_n(spec, t, x, n):
    """``lam**(n-t) * x_{t-n}(x)`` for a hyperbolic map with multiplier ``lam``."""
    lam = spec.multiplier
    if lam == 1.0:
        raise UsageError("epsilon_n is defined for hyperbolic maps")
    return lam ** (n - t) * _exact_or_raise(spec, t - n, x)


def hyp2f1_unit(b, c, z, rtol=1e-18, max_terms=1_000_000):
    """``2F1(1, b; c; z)`` for ``|z| < 1`` by term recursion.

    ``term_{k+1} = term_k (b + k) / (c + k) z``; stops when
    ``|term| < rtol |partial sum|``.
    """
    if abs(z) >= 1.0:
        raise DomainError(f"2F1(1,b;c;z) series needs |z| < 1, got {z!r}", value=z)
    total = 1.0
    term = 1.0
    for k in range(max_terms):
        term *= (b + k) / (c + k) * z
        total += term
        if abs(term) < rtol * abs(total):
            return total
    raise ArithmeticError("hypergeometric series did not converge")


def logistic2_coefficient(k, t):
    """``c_k(t) = (-2)^(k-1)/k! prod_{j<k} (2^t - j)`` for the lambda=2 flow."""
    s = 2.0**t
    prod = 1.0
    for j in range(k):
        prod *= s - j
    return (-2.0) ** (k - 1) / math.factorial(k) * prod


def logistic2_delta(x, t, N, rtol=1e-18):
    """Closed-form ``delta_N(x, t)`` for the lambda=2 flow."""
    return logistic2_coefficient(N + 1, t) * hyp2f1_unit(N + 1 - 2.0**t, N + 2.0, 2.0 * x, rtol)


def leading_error_logistic2(t, x, N, n):
    """Leading approximation to the relative error for lambda=2.

    Valid for ``0 < x < 1/2``; the powers of ``1 - 2x`` go through
    ``log1p``/``expm1``.
    """
    if not 0.0 < x < 0.5:
        raise DomainError(f"leading-error formula needs 0 < x < 1/2, got {x!r}", value=x)
    L = math.log1p(-2.0 * x)
    pull = -math.expm1(2.0**-n * L)  # 1 - (1-2x)^(2^-n)
    y0 = 0.5 * pull
    s = 2.0**t
    numer = 2.0 ** (n - N) * pull ** (N + 1) * math.exp(s * (1.0 - 2.0**-n) * L)
    denom = -math.expm1(s * L)
    return logistic2_delta(y0, t, N) * numer / denom


def scaling_check(spec, t, x, N, n, flow=None):
    """``lam**N R(n+1) / R(n)``; near 1 where the scaling law holds."""
    lam = spec.multiplier
    r_n = relative_error(spec, t, x, N, n, flow=flow).value
    if r_n == 0.0:
        raise DegenerateError(f"R vanishes at n={n}, x={x!r}; ratio undefined")
    r_next = relative_error(spec, t, x, N, n + 1, flow=flow).value
    return lam**N * r_next / r_n


@dataclass(frozen=True)
class RadiusReport:
    """Root-test estimates ``1/|c_k|^(1/k)``; zero coefficients are skipped."""

    estimates: list
    skipped: list

    def as_dict(self):
        return dict(self.estimates)


def _abs_log(c):
    if isinstance(c, Fraction):
        return math.log(abs(c.numerator)) - math.log(c.denominator)
    return math.log(abs(c))


def radius_estimate(flow, t, k_range):
    """Estimates ``1/|c_k(t)|^(1/k)`` for ``k`` in ``k_range``."""
    ks = list(k_range)
    if ks and max(ks) > flow.order:
        raise UsageError(f"flow order {flow.order} is below requested k={max(ks)}")
    estimates, skipped = [], []
    for k in ks:
        c = flow.coefficient(k, t if flow.is_exact else None)
        if not c:
            skipped.append(k)
            continue
        estimates.append((k, math.exp(-_abs_log(c) / k)))
    return RadiusReport(estimates, skipped)


def extrema_table(t_grid, N=9, n=5):
    """Rows ``(t, A_{n,t}(pi/2), (pi/2)^(1-sqrt t), relative discrepancy)``."""
    sine = catalog_get("sine")
    half_pi = math.pi / 2
    rows = []
    for t in t_grid:
        if not 0.0 <= t <= 1.0:
            raise UsageError(f"extrema table covers 0 <= t <= 1, got {t}")
        computed = iterate_eval(sine, t, half_pi, N, n)
        formula = half_pi ** (1.0 - math.sqrt(t))
        rows.append((t, computed, formula, (computed - formula) / formula))
    return rows
