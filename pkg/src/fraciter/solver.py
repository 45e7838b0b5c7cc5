"""Series solutions of the unit-step equation ``f(x_t(x)) = x_t(f(x))``.

The flow ``x_t`` is expanded as ``sum_k c_k(t) x**k`` about the fixed point
at the origin and the coefficients are found order by order.

Parabolic maps (``a_1 = 1``) admit an exact solution with ``c_k(t)``
polynomials in ``t``.  The coefficient ``c_k`` is fixed by the equation at
order ``k + m - 1``, where ``m`` is the first nonlinear index of the map, and
enters there with weight ``(m - k) a_m``.  The free coefficient ``c_m`` sets
the time scale; we take ``c_m(t) = a_m t``.

Hyperbolic maps (``a_1 > 0``, ``a_1 != 1``) fix ``c_1 = a_1**t``; then
``c_k`` is fixed at order ``k`` with weight ``a_1 - a_1**k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral

from .exceptions import DegenerateError, ResonanceError, UsageError
from .series import (
    PowerTable,
    TPoly,
    TruncatedSeries,
    series_add,
    series_compose,
)

__all__ = [
    "MapSeries",
    "FlowSeries",
    "UnitStepReport",
    "solve_flow_exact",
    "solve_flow_numeric",
    "velocity_series",
    "verify_unit_step",
    "DEFAULT_MAX_ORDER",
    "RESONANCE_TOL",
]

DEFAULT_MAX_ORDER = 81
RESONANCE_TOL = 1e-12

POLYNOMIAL = "polynomial"
NUMERIC = "numeric"


class MapSeries(TruncatedSeries):
    """Taylor coefficients ``a_1 .. a_N`` of a unit-step map at its fixed point."""

    __slots__ = ()

    def __init__(self, coeffs, kind=None):
        super().__init__(coeffs, kind=kind)
        if self.kind == "tpoly":
            raise UsageError("map coefficients must be scalars")
        if not self[1]:
            raise DegenerateError("map has zero multiplier a_1")

    @classmethod
    def from_series(cls, s):
        return cls(s.coeffs, kind=s.kind)

    @property
    def multiplier(self):
        return self[1]

    @property
    def is_parabolic(self):
        return self[1] == 1

    @property
    def tscale_index(self):
        """First ``k > 1`` with ``a_k != 0``; ``None`` if the map is the identity."""
        for k in range(2, self.order + 1):
            if self[k]:
                return k
        return None

    @property
    def classification(self):
        a1 = self[1]
        if a1 == 1:
            return "parabolic"
        if a1 > 0:
            return "hyperbolic"
        return "unsupported"

    def truncate(self, order):
        return MapSeries.from_series(TruncatedSeries.truncate(self, order))


@dataclass(frozen=True, eq=False)
class FlowSeries:
    """Truncated flow ``x_t`` of order ``order``.

    In ``"polynomial"`` mode ``coeffs`` are :class:`TPoly` and ``t`` is
    ``None``; in ``"numeric"`` mode they are scalars valid at the stored
    ``t``.  ``tscale_index`` is the normalizing index ``m`` for parabolic
    maps and ``None`` otherwise.
    """

    map: MapSeries
    order: int
    mode: str
    coeffs: tuple
    t: object = None
    tscale_index: int | None = None

    @property
    def is_exact(self):
        return self.mode == POLYNOMIAL

    def series(self, t=None):
        """The flow as a scalar :class:`TruncatedSeries` at time ``t``."""
        if self.mode == POLYNOMIAL:
            if t is None:
                return TruncatedSeries(self.coeffs, kind="tpoly")
            return TruncatedSeries(self.coeffs, kind="tpoly").at(t)
        if t is not None and not _same_t(t, self.t):
            raise UsageError(f"numeric flow was solved at t={self.t}, not t={t}")
        return TruncatedSeries(self.coeffs)

    def coefficient(self, k, t=None):
        c = self.coeffs[k - 1]
        if self.mode == POLYNOMIAL and t is not None:
            return c(t)
        return c

    def __call__(self, x, t=None):
        if self.mode == POLYNOMIAL and t is None:
            raise UsageError("polynomial-mode flow needs t to evaluate")
        return self.series(t)(x)


def _same_t(a, b):
    return a == b or float(a) == float(b)


def _as_map(f):
    if isinstance(f, MapSeries):
        return f
    if isinstance(f, TruncatedSeries):
        return MapSeries.from_series(f)
    return MapSeries(f)


def _powers_of(a, order, zero):
    """``F[j][K] = [x**K] f**j`` for ``j, K <= order``."""
    table = PowerTable(order, zero)
    for k in range(1, order + 1):
        table.set(k, a[k] if k < len(a) else zero)
        table.finalize(k)
    return table.P


def _solve_unit_step(a, n, c1, shift, fixed, pivot_for, zero, g1_powers, scale_for=None):
    """Order-by-order solve shared by all modes.

    ``a`` is the dense map list (index = power) padded with zeros to order
    ``n + shift``; the equation at order ``k + shift`` is linear in ``c_k``
    with coefficient ``pivot_for(k)``.
    """
    top = n + shift
    scalar_zero = 0.0 if isinstance(a[1], float) else Fraction(0)
    F = _powers_of(a, top, scalar_zero)
    table = PowerTable(top, zero)
    table.set(1, c1)
    table.finalize(1)
    for k in range(2, n + 1):
        if k in fixed:
            table.set(k, fixed[k])
            table.finalize(k)
            continue
        table.set(k, zero)
        table.finalize(k)
        K = k + shift
        P, g = table.P, table.g
        r = zero
        for i in range(1, K + 1):
            if a[i]:
                p = P[i][K]
                if p:
                    r = r + a[i] * p
        for j in range(1, k + 1):
            if g[j]:
                q = F[j][K]
                if q:
                    r = r - g[j] * q
        piv = pivot_for(k)
        if scale_for is not None:
            if abs(piv) < RESONANCE_TOL * scale_for(k):
                raise ResonanceError(
                    f"near-zero pivot {piv!r} at order {k} (multiplier resonance)"
                )
        elif not piv:
            raise ResonanceError(f"zero pivot at order {k}")
        if r:
            table.bump(k, -(r / piv), g1_powers)
    return table.g[1 : n + 1]


def _prepare_parabolic(f, n):
    if f.kind != "rational":
        raise UsageError("exact solve needs rational map coefficients")
    if not f.is_parabolic:
        raise UsageError(
            f"map has multiplier {f.multiplier}; use solve_flow_numeric for hyperbolic maps"
        )
    if f.order < n:
        raise UsageError(f"map series of order {f.order} cannot determine a flow of order {n}")
    f = f.truncate(n)
    m = f.tscale_index
    if m is None:
        raise DegenerateError("map is the identity through this order; no time scale exists")
    a = [Fraction(0)] + list(f.coeffs) + [Fraction(0)] * (m - 1)
    return f, m, a


def solve_flow_exact(f, N, max_order=DEFAULT_MAX_ORDER):
    """Exact parabolic flow with polynomial-in-``t`` coefficients.

    Parameters
    ----------
    f : MapSeries or sequence
        Rational coefficients ``a_1 = 1, a_2, ...`` of the map, order >= N.
    N : int
        Flow order.
    max_order : int, optional
        Guard on ``N``; rational numerators grow quickly with order.

    Returns
    -------
    FlowSeries
        Polynomial mode, normalized by ``c_m(t) = a_m t``.
    """
    f = _as_map(f)
    if N > max_order:
        raise UsageError(f"order {N} exceeds max_order={max_order}")
    f, m, a = _prepare_parabolic(f, N)
    zero = TPoly()
    fixed = {m: TPoly([0, a[m]])} if m <= N else {}
    am = a[m]
    coeffs = _solve_unit_step(
        a, N, TPoly.const(1), m - 1, fixed, lambda k: (m - k) * am, zero,
        [Fraction(1)] * (N + m + 1),
    )
    return FlowSeries(f, N, POLYNOMIAL, tuple(coeffs), None, m)


def solve_flow_numeric(f, t, N, max_order=DEFAULT_MAX_ORDER):
    """Flow coefficients at a fixed time ``t``.

    Parabolic maps with rational coefficients are solved exactly at the
    rational value of ``t`` (a float ``t`` is converted exactly), which is
    the polynomial solution evaluated at ``t``; the result is converted back
    to floats when ``t`` was a float.  Hyperbolic maps are solved in floats
    with ``c_1 = a_1**t``.
    """
    f = _as_map(f)
    if N > max_order:
        raise UsageError(f"order {N} exceeds max_order={max_order}")
    if f.order < N:
        raise UsageError(f"map series of order {f.order} cannot determine a flow of order {N}")
    f = f.truncate(N)
    a1 = f.multiplier
    if a1 <= 0:
        raise UsageError(f"unsupported multiplier a_1={a1}: real flow a_1**t undefined")
    exact_t = isinstance(t, (Integral, Fraction)) and not isinstance(t, bool)

    if f.is_parabolic:
        m = f.tscale_index
        if m is None:
            raise DegenerateError("map is the identity through this order; no time scale exists")
        if f.kind == "rational":
            tq = Fraction(t)
            a = [Fraction(0)] + list(f.coeffs) + [Fraction(0)] * (m - 1)
            zero = Fraction(0)
            ones = [Fraction(1)] * (N + m + 1)
            am = a[m]
            coeffs = _solve_unit_step(
                a, N, Fraction(1), m - 1, {m: am * tq}, lambda k: (m - k) * am, zero, ones
            )
            if not exact_t:
                coeffs = [float(c) for c in coeffs]
        else:
            tf = float(t)
            a = [0.0] + [float(c) for c in f.coeffs] + [0.0] * (m - 1)
            am = a[m]
            coeffs = _solve_unit_step(
                a, N, 1.0, m - 1, {m: am * tf}, lambda k: (m - k) * am, 0.0,
                [1.0] * (N + m + 1), scale_for=lambda k: max(m, k) * abs(am),
            )
        return FlowSeries(f, N, NUMERIC, tuple(coeffs), t, m)

    a = [0.0] + [float(c) for c in f.coeffs]
    a1 = a[1]
    tf = float(t)
    c1 = a1**tf
    g1p = [c1**i for i in range(N + 1)]
    coeffs = _solve_unit_step(
        a, N, c1, 0, {}, lambda k: a1 - a1**k, 0.0, g1p,
        scale_for=lambda k: max(abs(a1), abs(a1) ** k),
    )
    return FlowSeries(f, N, NUMERIC, tuple(coeffs), t, None)


def velocity_series(flow):
    """Generator ``v(x) = d x_t(x)/dt`` at ``t = 0`` from a polynomial-mode flow."""
    if flow.mode != POLYNOMIAL:
        raise UsageError("velocity_series needs a polynomial-mode (exact) flow")
    return TruncatedSeries([c.coef(1) for c in flow.coeffs], kind="rational")


@dataclass(frozen=True)
class UnitStepReport:
    """Residual ``f(x_t) - x_t(f)`` through the flow order."""

    residual: TruncatedSeries
    exact: bool

    @property
    def first_nonzero_order(self):
        for k, c in enumerate(self.residual.coeffs, start=1):
            if c:
                return k
        return None

    @property
    def max_abs(self):
        if self.residual.kind == "tpoly":
            return max(
                (float(abs(q)) for c in self.residual.coeffs for q in c.coeffs),
                default=0.0,
            )
        return float(self.residual.max_abs())

    @property
    def ok(self):
        if self.exact:
            return self.first_nonzero_order is None
        return self.max_abs <= RESONANCE_TOL


def verify_unit_step(flow):
    """Compute ``x_1 o x_t - x_t o x_1`` through order ``N``."""
    n = flow.order
    f = flow.map.truncate(n)
    if flow.mode == POLYNOMIAL:
        fs = TruncatedSeries([TPoly.const(c) for c in f.coeffs], kind="tpoly")
        xt = flow.series()
        exact = True
    else:
        xt = flow.series()
        exact = xt.kind == "rational" and f.kind == "rational"
        fs = TruncatedSeries(f.coeffs, kind="rational") if exact else f.to_float()
        if xt.kind == "rational" and not exact:
            xt = xt.to_float()
    res = series_add(series_compose(fs, xt), -series_compose(xt, fs))
    return UnitStepReport(res, exact)

