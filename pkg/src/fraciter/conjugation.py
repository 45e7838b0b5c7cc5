"""n-fold conjugation of a truncated flow series by the unit-step map.

``A_{n,t} = outer^n o P_{N,t} o inner^n`` where ``inner`` is whichever of
the map and its inverse moves the argument toward the fixed point, so the
truncated series ``P_{N,t}`` is only ever evaluated close to the origin.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

from .exceptions import DomainError, NumericRangeError, UsageError
from .maps import MapSpec, apply_n
from .series import series_eval
from .solver import FlowSeries, solve_flow_exact, solve_flow_numeric

__all__ = [
    "Direction",
    "ConjugatedApproximant",
    "choose_direction",
    "conjugate_eval",
    "iterate_eval",
    "approximant",
    "flow_for",
    "DEFAULT_N_PLOT",
    "DEFAULT_N_ACCURATE",
]

DEFAULT_N_PLOT = 5
DEFAULT_N_ACCURATE = 7


class Direction(enum.Enum):
    """Which map is applied first.

    ``INNER_FORWARD``: ``map^-n o P o map^n`` (sine pattern).
    ``INNER_INVERSE``: ``map^n o P o map^-n`` (rational and logistic pattern).
    """

    INNER_FORWARD = "inner_forward"
    INNER_INVERSE = "inner_inverse"


@dataclass(frozen=True, eq=False)
class ConjugatedApproximant:
    """``A_{n,t}`` for a map, a flow approximant and a conjugation depth.

    ``flow`` is normally a :class:`FlowSeries`; any callable ``(t, x)`` is
    also accepted, which lets an exact flow stand in for the series.
    """

    map: MapSpec
    flow: Union[FlowSeries, Callable[[float, float], float]]
    n: int
    direction: Direction

    def __call__(self, t, x):
        return conjugate_eval(self, t, x)


def choose_direction(spec, x):
    """Apply first whichever step shrinks ``|x|``."""
    a1 = spec.multiplier
    if abs(a1) > 1.0:
        return Direction.INNER_INVERSE
    if abs(a1) < 1.0:
        return Direction.INNER_FORWARD
    try:
        y = spec.forward(x)
    except (DomainError, ArithmeticError):
        return Direction.INNER_INVERSE
    return Direction.INNER_FORWARD if abs(y) <= abs(x) else Direction.INNER_INVERSE


@lru_cache(maxsize=64)
def _scalar_series(flow, t):
    s = flow.series(t)
    return s.to_float() if s.kind == "rational" else s


def _eval_flow(flow, t, x):
    if isinstance(flow, FlowSeries):
        if flow.mode == "numeric":
            if not (flow.t == t or float(flow.t) == float(t)):
                raise UsageError(f"numeric flow carries t={flow.t}, evaluation asked for t={t}")
            return series_eval(_scalar_series(flow, None), x)
        return series_eval(_scalar_series(flow, _hashable_t(t)), x)
    return flow(t, x)


def _hashable_t(t):
    return t if isinstance(t, Fraction) else float(t)


def _stage(fn, x, stage):
    try:
        y = fn(x)
    except DomainError as exc:
        raise type(exc)(f"stage {stage}: {exc}", value=exc.value, stage=stage) from exc
    if not math.isfinite(y):
        raise NumericRangeError(f"stage {stage} produced a non-finite value from x={x!r}")
    return y


def conjugate_eval(approx, t, x):
    """Evaluate ``A_{n,t}(x)``: inner^n, then the series, then outer^n.

    Domain escapes carry the stage index ``0 .. 2n`` (``n`` is the series).
    """
    spec, n = approx.map, approx.n
    if approx.direction is Direction.INNER_FORWARD:
        inner, outer = spec.forward, spec.inverse
    else:
        inner, outer = spec.inverse, spec.forward
    y = float(x)
    stage = 0
    for _ in range(n):
        y = _stage(inner, y, stage)
        stage += 1
    y = _stage(lambda u: _eval_flow(approx.flow, t, u), y, stage)
    stage += 1
    for _ in range(n):
        y = _stage(outer, y, stage)
        stage += 1
    return y


_FLOW_CACHE = {}


def flow_for(spec, N, t=None):
    """Flow series for a catalog or user map, cached per ``(map, N, t)``.

    Parabolic maps with rational coefficients get one polynomial-mode flow
    reused for every ``t``; other maps get a numeric flow at ``t``.
    """
    series = spec.series(N)
    if series.is_parabolic and series.kind == "rational":
        key = (id(spec), spec.label(), N, None)
        if key not in _FLOW_CACHE:
            _FLOW_CACHE[key] = (spec, solve_flow_exact(series, N))
        return _FLOW_CACHE[key][1]
    if t is None:
        raise UsageError("numeric flows are solved at a fixed t")
    key = (id(spec), spec.label(), N, _hashable_t(t))
    if key not in _FLOW_CACHE:
        _FLOW_CACHE[key] = (spec, solve_flow_numeric(series, t, N))
    return _FLOW_CACHE[key][1]


def approximant(spec, N, n, t, x=None, direction=None):
    """Build ``A_{n,t}`` with the direction chosen at ``x`` unless given."""
    if direction is None:
        direction = choose_direction(spec, 0.0 if x is None else x)
    return ConjugatedApproximant(spec, flow_for(spec, N, t), n, direction)


def iterate_eval(spec, t, x, N=9, n=DEFAULT_N_PLOT):
    """Approximate ``x_t(x)`` for any real ``t``.

    ``t = k + tau`` with integer ``k`` and ``tau`` in ``[0, 1)``; the result
    is ``map^k(A_{n,tau}(x))``.  ``tau == 0`` skips the series entirely.
    """
    k = math.floor(t)
    tau = t - k
    if isinstance(t, float):
        tau = float(tau)
    if tau == 0:
        return apply_n(spec, int(k), float(x))
    A = approximant(spec, N, n, tau, x)
    y = conjugate_eval(A, tau, x)
    return apply_n(spec, int(k), y)
