"""Built-in unit-step maps and user-defined ones.

Every map fixes the origin.  Evaluators are written for relative accuracy
near ``x = 0`` because the conjugation method pushes arguments there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from scipy.optimize import brentq

from .exceptions import DomainError, NumericRangeError, PoleError, UsageError
from .series import TruncatedSeries, series_eval, series_revert
from .solver import MapSeries

__all__ = [
    "MapSpec",
    "SchroederClosed",
    "catalog_get",
    "apply_n",
    "user_map",
    "CATALOG",
]

CATALOG = ("moebius", "sine", "logistic")

INVERSE_XTOL = 1e-14
INVERSE_MAXITER = 60


@dataclass(frozen=True)
class SchroederClosed:
    """Closed-form Schroeder function: ``psi(x_t(x)) = kappa**t psi(x)``."""

    formula: str
    psi: Callable[[float], float]
    psi_inverse: Callable[[float], float]
    kappa: float


@dataclass(frozen=True, eq=False)
class MapSpec:
    """A unit-step map ``x_1`` with its inverse branch through the origin.

    Attributes
    ----------
    name : str
    params : dict
    forward, inverse : callable
        ``x -> x_1(x)`` and ``y -> x_{-1}(y)``; the inverse raises
        :class:`DomainError` outside its branch.
    coefficients : callable
        ``N -> MapSeries`` of Taylor coefficients at the origin.
    exact_flow : callable or None
        ``(t, x) -> x_t(x)`` where a closed form is known.
    schroeder_closed : SchroederClosed or None
    domain : (float, float)
        Interval on which ``inverse(forward(x)) == x``.
    """

    name: str
    forward: Callable[[float], float]
    inverse: Callable[[float], float]
    coefficients: Callable[[int], MapSeries]
    exact_flow: Optional[Callable[[float, float], float]] = None
    schroeder_closed: Optional[SchroederClosed] = None
    domain: tuple = (-math.inf, math.inf)
    params: dict = field(default_factory=dict)

    def series(self, order):
        return self.coefficients(order)

    @property
    def multiplier(self):
        return float(self.coefficients(1)[1])

    def label(self):
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.name}({inner})"

    def __repr__(self):
        return f"MapSpec({self.label()})"


def _finite(v, what, x):
    if not math.isfinite(v):
        raise NumericRangeError(f"{what} produced a non-finite value at x={x!r}")
    return v


# moebius: x/(1-x) -------------------------------------------------------

def _moebius_forward(x):
    d = 1.0 - x
    if d == 0.0:
        raise PoleError("x/(1-x) has a pole at x=1", value=x)
    return x / d


def _moebius_inverse(y):
    d = 1.0 + y
    if d == 0.0:
        raise PoleError("x/(1+x) has a pole at x=-1", value=y)
    return y / d


def _moebius_flow(t, x):
    d = 1.0 - x * t
    if d == 0.0:
        raise PoleError(f"exact flow x/(1-xt) has a pole at x*t=1 (x={x}, t={t})", value=x)
    return x / d


def _moebius_coefficients(order):
    return MapSeries([1] * order)


def _moebius_psi(x):
    return math.exp(-1.0 / x)


def _moebius_psi_inverse(w):
    return -1.0 / math.log(w)


# sine ---------------------------------------------------------------------

def _sine_inverse(y):
    if abs(y) > 1.0:
        raise DomainError(f"arcsin argument {y!r} outside [-1, 1]", value=y)
    return math.asin(y)


def _sine_coefficients(order):
    cs = []
    for k in range(1, order + 1):
        if k % 2:
            cs.append(Fraction((-1) ** ((k - 1) // 2), math.factorial(k)))
        else:
            cs.append(Fraction(0))
    return MapSeries(cs)


# logistic ----------------------------------------------------------------

def _logistic_parts(lam):
    lamf = float(lam)
    lamq = lam if isinstance(lam, Fraction) else Fraction(repr(lamf))

    def forward(x):
        return _finite(lamf * x * (1.0 - x), "logistic map", x)

    def inverse(y):
        if abs(y) > lamf / 4.0:
            raise DomainError(
                f"logistic inverse argument {y!r} outside |y| <= lambda/4 = {lamf / 4.0}",
                value=y,
            )
        # (1 - sqrt(1 - 4y/lam))/2 without cancellation near y = 0
        s = 4.0 * y / lamf
        return (s / 2.0) / (1.0 + math.sqrt(1.0 - s))

    def coefficients(order):
        cs = [lamq, -lamq] + [Fraction(0)] * max(order - 2, 0)
        return MapSeries(cs[:order])

    return lamf, lamq, forward, inverse, coefficients


def _logistic2_flow(t, x):
    if x > 0.5:
        raise DomainError(f"lambda=2 closed-form flow needs x <= 1/2, got {x!r}", value=x)
    if x == 0.5:
        return 0.5
    # 1/2 (1 - (1-2x)^(2^t)), powered through log1p/expm1
    return -0.5 * math.expm1(2.0**t * math.log1p(-2.0 * x))


def _logistic2_psi(x):
    return -0.5 * math.log1p(-2.0 * x)


def _logistic2_psi_inverse(w):
    return -0.5 * math.expm1(-2.0 * w)


def _logistic4_flow(t, x):
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"lambda=4 closed-form flow needs 0 <= x <= 1, got {x!r}", value=x)
    return math.sin(2.0**t * math.asin(math.sqrt(x))) ** 2


def _logistic4_psi(x):
    return math.asin(math.sqrt(x)) ** 2


def _logistic4_psi_inverse(w):
    return math.sin(math.sqrt(w)) ** 2


@lru_cache(maxsize=None)
def catalog_get(name, lam=None):
    """Look up a built-in map.

    Parameters
    ----------
    name : {"moebius", "sine", "logistic"}
    lam : float or Fraction, optional
        Logistic parameter, ``0 < lam <= 4``.
    """
    if name == "moebius":
        return MapSpec(
            name="moebius",
            forward=_moebius_forward,
            inverse=_moebius_inverse,
            coefficients=_moebius_coefficients,
            exact_flow=_moebius_flow,
            schroeder_closed=SchroederClosed(
                "exp(-1/x)", _moebius_psi, _moebius_psi_inverse, math.e
            ),
            domain=(-0.5, 0.95),
        )
    if name == "sine":
        return MapSpec(
            name="sine",
            forward=math.sin,
            inverse=_sine_inverse,
            coefficients=_sine_coefficients,
            domain=(-math.pi / 2, math.pi / 2),
        )
    if name == "logistic":
        if lam is None:
            raise UsageError("logistic map needs lam")
        if not 0 < float(lam) <= 4:
            raise UsageError(f"logistic parameter must satisfy 0 < lambda <= 4, got {lam}")
        lamf, lamq, fwd, inv, coeffs = _logistic_parts(lam)
        flow = psi = None
        if lamq == 2:
            flow = _logistic2_flow
            psi = SchroederClosed(
                "-1/2 ln(1-2x)", _logistic2_psi, _logistic2_psi_inverse, 2.0
            )
        elif lamq == 4:
            flow = _logistic4_flow
            psi = SchroederClosed(
                "arcsin(sqrt(x))^2", _logistic4_psi, _logistic4_psi_inverse, 4.0
            )
        return MapSpec(
            name="logistic",
            forward=fwd,
            inverse=inv,
            coefficients=coeffs,
            exact_flow=flow,
            schroeder_closed=psi,
            domain=(0.0, min(0.5, lamf / 4.0)),
            params={"lambda": lamf},
        )
    raise UsageError(f"unknown map {name!r}; expected one of {', '.join(CATALOG)}")


def apply_n(spec, n, x):
    """Apply the map ``n`` times (its inverse for ``n < 0``)."""
    step = spec.forward if n > 0 else spec.inverse
    for j in range(1, abs(n) + 1):
        try:
            x = step(x)
        except DomainError as exc:
            raise type(exc)(
                f"step {j} of {n}: {exc}", value=exc.value, stage=j
            ) from exc
        if not math.isfinite(x):
            raise NumericRangeError(f"step {j} of {n} produced a non-finite value")
    return x


def _series_backed_inverse(forward, series):
    rev = series_revert(series.to_float())

    def inverse(y):
        if y == 0.0:
            return 0.0
        guess = series_eval(rev, y)
        g = lambda u: forward(u) - y  # noqa: E731
        scale = max(abs(guess), abs(y))
        width = 1e-8 * scale
        lo, hi = guess - width, guess + width
        try:
            glo, ghi = g(lo), g(hi)
            for _ in range(60):
                if glo == 0.0:
                    return lo
                if ghi == 0.0:
                    return hi
                if (glo < 0) != (ghi < 0):
                    break
                width *= 2.0
                lo, hi = guess - width, guess + width
                glo, ghi = g(lo), g(hi)
            else:
                raise DomainError(f"could not bracket the inverse at y={y!r}", value=y)
        except (ArithmeticError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"inverse search left the map's domain at y={y!r}", value=y) from exc
        return brentq(
            g, lo, hi, xtol=INVERSE_XTOL * scale, rtol=4 * 2.2205e-16, maxiter=INVERSE_MAXITER
        )

    return inverse


def user_map(name, forward, coefficients, inverse=None, exact_flow=None,
             domain=(-math.inf, math.inf)):
    """Wrap a user-supplied map.

    ``coefficients`` is a sequence ``a_1 .. a_M`` (exact rationals keep the
    exact solver available).  Without an explicit ``inverse`` the inverse is
    the reverted series refined by a bracketed root search.
    """
    base = MapSeries(coefficients)

    def coeffs(order):
        if order > base.order:
            raise UsageError(
                f"user map {name!r} has {base.order} coefficients; order {order} requested"
            )
        return base.truncate(order)

    if inverse is None:
        inverse = _series_backed_inverse(forward, base)
    return MapSpec(
        name=name,
        forward=forward,
        inverse=inverse,
        coefficients=coeffs,
        exact_flow=exact_flow,
        domain=domain,
    )
