"""Schroeder conjugacies at the fixed point.

Hyperbolic maps get the Koenigs series ``psi`` with ``psi(f(x)) = a_1 psi(x)``
and ``psi'(0) = 1``.  Parabolic maps get the essential-singularity form
``Psi(x) = x**rho * exp(sum_k p_k x**k)`` obtained by integrating ``1/v``
for the flow velocity ``v``; one unit step multiplies it by ``e``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from scipy.optimize import brentq, newton

from .exceptions import DegenerateError, DomainError, NumericRangeError, UsageError
from .series import TruncatedSeries, series_eval, series_revert
from .solver import _as_map, _powers_of
from .maps import apply_n

__all__ = [
    "KoenigsSeries",
    "ParabolicPsiExpansion",
    "koenigs_series",
    "koenigs_velocity",
    "parabolic_psi",
    "psi_eval",
    "psi_residual",
    "flow_from_koenigs",
]


@dataclass(frozen=True, eq=False)
class KoenigsSeries:
    """Koenigs function ``psi = sum b_k x**k`` (``b_1 = 1``) with ``kappa = a_1``."""

    multiplier: object
    series: TruncatedSeries

    @property
    def order(self):
        return self.series.order

    @property
    def kappa(self):
        return float(self.multiplier)

    @property
    def coeffs(self):
        return self.series.coeffs

    def __call__(self, x):
        return series_eval(self.series.to_float() if self.series.kind != "float" else self.series, x)

    def derivative(self, x):
        acc = 0.0
        for k in range(self.order, 0, -1):
            acc = acc * x + k * float(self.series[k])
        return acc


@dataclass(frozen=True)
class ParabolicPsiExpansion:
    """``Psi(x) ~ |x|**rho * exp(sum_k p[k] x**k)`` as ``x -> 0``; ``kappa = e``."""

    rho: Fraction
    p: dict = field(default_factory=dict)
    kappa: float = math.e

    @property
    def min_index(self):
        return min(self.p) if self.p else 0

    def log_eval(self, x):
        if x == 0:
            raise DomainError("Schroeder expansion is singular at x=0", value=x)
        acc = float(self.rho) * math.log(abs(x)) if self.rho else 0.0
        for k, pk in sorted(self.p.items()):
            acc += float(pk) * x**k
        return acc

    def __call__(self, x):
        return psi_eval(self, x)


def koenigs_series(f, N):
    """Koenigs series of a hyperbolic map, solved order by order.

    Exact when the map coefficients are rational.
    """
    f = _as_map(f)
    if f.classification != "hyperbolic":
        raise UsageError(
            f"koenigs_series needs a hyperbolic map (a_1 > 0, a_1 != 1); got a_1={f.multiplier}"
            + ("; use parabolic_psi" if f.is_parabolic else "")
        )
    kind = f.kind
    zero = 0.0 if kind == "float" else Fraction(0)
    a = [zero] + list(f.coeffs[:N])
    F = _powers_of(a, N, zero)
    a1 = a[1]
    b = [zero] * (N + 1)
    b[1] = zero + 1
    for k in range(2, N + 1):
        acc = zero
        for j in range(1, k):
            if b[j] and F[j][k]:
                acc += b[j] * F[j][k]
        b[k] = acc / (a1 - a1**k)
    return KoenigsSeries(a1, TruncatedSeries(b[1:], kind=kind))


def _dense_reciprocal(d, n):
    """``1/d`` for a dense list with ``d[0] != 0``, through index ``n``."""
    one = 1.0 if isinstance(d[0], float) else Fraction(1)
    out = [one * 0] * (n + 1)
    out[0] = one / d[0]
    for k in range(1, n + 1):
        acc = one * 0
        for j in range(1, min(k, len(d) - 1) + 1):
            acc += d[j] * out[k - j]
        out[k] = -acc * out[0]
    return out


def koenigs_velocity(psi, N=None):
    """Flow generator ``v = ln(a_1) psi / psi'`` as a float series."""
    N = psi.order if N is None else N
    if N > psi.order:
        raise UsageError(f"Koenigs series of order {psi.order} cannot give velocity to order {N}")
    b = [0] + list(psi.coeffs[:N])
    dpsi = [k * b[k] for k in range(1, N + 1)]  # index = power of x
    recip = _dense_reciprocal(dpsi, N)
    ratio = []
    for k in range(1, N + 1):
        acc = 0
        for j in range(1, k + 1):
            acc += b[j] * recip[k - j]
        ratio.append(acc)
    log_a1 = math.log(psi.kappa)
    return TruncatedSeries([float(c) * log_a1 for c in ratio], kind="float")


def parabolic_psi(v):
    """Integrate ``1/v`` termwise to get ``rho`` and the exponent coefficients.

    ``v`` starts at ``a_m x**m`` with ``m >= 2``; ``1/v`` is expanded as a
    Laurent series through the orders ``v`` determines.
    """
    if v.kind == "tpoly":
        raise UsageError("parabolic_psi needs scalar velocity coefficients")
    m = next((k for k in range(1, v.order + 1) if v[k]), None)
    if m is None:
        raise UsageError("velocity series is identically zero")
    if m < 2:
        raise UsageError(f"velocity must start at x^m with m >= 2, found m={m}")
    am = v[m]
    tail = v.order - m
    u = [am / am] + [v[m + j] / am for j in range(1, tail + 1)]
    w = _dense_reciprocal(u, tail)
    rho = Fraction(0) if v.kind == "rational" else 0.0
    p = {}
    for j, wj in enumerate(w):
        coef = wj / am
        e = j - m
        if e == -1:
            rho = coef
        else:
            p[e + 1] = coef / (e + 1)
    return ParabolicPsiExpansion(rho, p)


def psi_eval(psi, x):
    """Evaluate a Koenigs series, a parabolic expansion, or a closed form."""
    if isinstance(psi, ParabolicPsiExpansion):
        lg = psi.log_eval(x)
        if lg > 709.0:
            raise NumericRangeError(f"Psi overflows at x={x!r} (log Psi = {lg})")
        return math.exp(lg)
    if isinstance(psi, KoenigsSeries):
        return psi(x)
    return psi.psi(x)


def psi_residual(spec, psi, x, s=1):
    """``Psi(f^s(x)) / (kappa**s Psi(x)) - 1``; zero for an exact conjugacy."""
    y = apply_n(spec, s, x)
    if isinstance(psi, ParabolicPsiExpansion):
        return math.expm1(psi.log_eval(y) - psi.log_eval(x) - s * math.log(psi.kappa))
    px = psi_eval(psi, x)
    if px == 0.0:
        raise DegenerateError(f"Psi vanishes at x={x!r}")
    return psi_eval(psi, y) / (psi.kappa**s * px) - 1.0


def flow_from_koenigs(psi, t, x, refine=True):
    """``psi^-1(a_1**t psi(x))``.

    The inverse starts from the reverted series and, unless ``refine`` is
    false, is polished by Newton's method on ``psi(y) = target`` with a
    bracketed fallback.
    """
    if t == 0:
        return x
    target = psi.kappa**t * psi(x)
    rev = series_revert(psi.series.to_float())
    guess = series_eval(rev, target)
    if not refine:
        return guess
    g = lambda y: psi(y) - target  # noqa: E731
    try:
        y = newton(g, guess, fprime=psi.derivative, tol=1e-15, maxiter=50)
        if math.isfinite(y) and abs(g(y)) <= 1e-13 * max(abs(target), 1e-300):
            return float(y)
    except (RuntimeError, ArithmeticError):
        pass
    width = 1e-6 * max(abs(guess), 1e-12)
    for _ in range(60):
        lo, hi = guess - width, guess + width
        if (g(lo) < 0) != (g(hi) < 0):
            return brentq(g, lo, hi, xtol=1e-16, rtol=4 * 2.2205e-16, maxiter=100)
        width *= 2.0
    raise DomainError(f"target {target!r} not reachable inside the Koenigs window", value=x)
