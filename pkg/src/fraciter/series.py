"""Truncated power series with zero constant term.

A :class:`TruncatedSeries` of order ``N`` holds ``c_1 .. c_N``, the
coefficients of ``x .. x**N``; the constant term is always zero so every
series is a germ fixing the origin.  Coefficients are all of one kind:

* ``"rational"``  -- :class:`fractions.Fraction` (ints are promoted),
* ``"float"``     -- Python/numpy floats,
* ``"tpoly"``     -- :class:`TPoly`, exact polynomials in the flow time t.

Mixing rational and float coefficients in one series is rejected.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Integral

from .exceptions import DegenerateError, NumericRangeError, UsageError

__all__ = [
    "TPoly",
    "TruncatedSeries",
    "scalar_kind",
    "series_add",
    "series_mul",
    "series_compose",
    "series_revert",
    "series_eval",
    "tpoly_eval",
]

_RATIONAL = "rational"
_FLOAT = "float"
_TPOLY = "tpoly"


def _is_rational(c):
    return isinstance(c, Fraction) or (
        isinstance(c, Integral) and not isinstance(c, bool)
    )


class TPoly:
    """Polynomial in ``t`` with :class:`~fractions.Fraction` coefficients.

    ``TPoly([a0, a1, a2])`` is ``a0 + a1*t + a2*t**2``.  Trailing zeros are
    stripped, so the zero polynomial has no coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = []
        for c in coeffs:
            if not _is_rational(c):
                raise UsageError(f"TPoly coefficients must be rational, got {c!r}")
            cs.append(Fraction(c))
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, cs):
        # trusted constructor: cs is a list of Fractions
        while cs and not cs[-1]:
            cs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, c, degree):
        return cls([0] * degree + [c])

    @property
    def degree(self):
        """Degree of the polynomial; -1 for zero."""
        return len(self.coeffs) - 1

    def coef(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, TPoly):
            return self.coeffs == other.coeffs
        if _is_rational(other):
            return self.coeffs == TPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coef(0))
        return hash(self.coeffs)

    def __repr__(self):
        return f"TPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_tpoly(self)

    def __neg__(self):
        return TPoly._raw([-c for c in self.coeffs])

    def __add__(self, other):
        if isinstance(other, TPoly):
            a, b = self.coeffs, other.coeffs
            if len(a) < len(b):
                a, b = b, a
            out = list(a)
            for i, c in enumerate(b):
                out[i] += c
            return TPoly._raw(out)
        if _is_rational(other):
            out = list(self.coeffs) or [Fraction(0)]
            out[0] += other
            return TPoly._raw(out)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, TPoly) or _is_rational(other):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TPoly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return TPoly._raw([])
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if not ai:
                    continue
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
            return TPoly._raw(out)
        if _is_rational(other):
            if not other:
                return TPoly._raw([])
            return TPoly._raw([c * other for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_rational(other):
            if not other:
                raise ZeroDivisionError("TPoly division by zero")
            inv = 1 / Fraction(other)
            return TPoly._raw([c * inv for c in self.coeffs])
        return NotImplemented

    def __call__(self, t):
        return tpoly_eval(self, t)

    def shift_scale(self, s):
        """Return ``p(s * t)`` for rational ``s``."""
        s = Fraction(s)
        return TPoly._raw([c * s**i for i, c in enumerate(self.coeffs)])


def format_tpoly(p):
    """Canonical text form, highest power first: ``-1/6*t``, ``t^3``."""
    if not p.coeffs:
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = "t" if i == 1 else f"t^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def tpoly_eval(p, t):
    """Horner evaluation of a :class:`TPoly`; exact for rational ``t``."""
    if _is_rational(t):
        t = Fraction(t)
        acc = Fraction(0)
    else:
        acc = 0.0
    for c in reversed(p.coeffs):
        acc = acc * t + c
    if isinstance(acc, float) and not math.isfinite(acc):
        raise NumericRangeError(f"TPoly evaluation overflowed at t={t!r}")
    return acc if isinstance(acc, float) else Fraction(acc)


def scalar_kind(c):
    """Coefficient kind tag of a single value, or ``None`` for plain ints."""
    if isinstance(c, TPoly):
        return _TPOLY
    if isinstance(c, bool):
        raise UsageError("booleans are not coefficients")
    if isinstance(c, Integral):
        return None
    if isinstance(c, Fraction):
        return _RATIONAL
    if isinstance(c, float):
        return _FLOAT
    raise UsageError(f"unsupported coefficient type {type(c).__name__}")


def _zero(kind):
    if kind == _FLOAT:
        return 0.0
    if kind == _TPOLY:
        return TPoly._raw([])
    return Fraction(0)


def _promote(coeffs, kind=None):
    """Validate one-kind-per-series and convert ints to that kind."""
    coeffs = list(coeffs)
    kinds = {scalar_kind(c) for c in coeffs} - {None}
    if len(kinds) > 1:
        raise UsageError(f"mixed coefficient kinds in one series: {sorted(kinds)}")
    found = kinds.pop() if kinds else None
    if kind is None:
        kind = found or _RATIONAL
    elif found is not None and found != kind:
        raise UsageError(f"expected {kind} coefficients, got {found}")
    if kind == _FLOAT:
        out = [float(c) for c in coeffs]
    elif kind == _TPOLY:
        out = [c if isinstance(c, TPoly) else TPoly.const(c) for c in coeffs]
    else:
        out = [Fraction(c) for c in coeffs]
    return out, kind


class TruncatedSeries:
    """Power series ``sum_{k=1}^{N} c_k x**k`` truncated at order ``N``.

    Parameters
    ----------
    coeffs : sequence
        ``c_1, ..., c_N``.  The length fixes the order.
    kind : {"rational", "float", "tpoly"}, optional
        Forces the coefficient kind; inferred otherwise (all-int input is
        rational).
    """

    __slots__ = ("_c", "_kind")

    def __init__(self, coeffs, kind=None):
        cs, kind = _promote(coeffs, kind)
        if not cs:
            raise UsageError("a truncated series needs order >= 1")
        self._c = tuple(cs)
        self._kind = kind

    @classmethod
    def _raw(cls, cs, kind):
        s = object.__new__(cls)
        s._c = tuple(cs)
        s._kind = kind
        return s

    @classmethod
    def identity(cls, order, kind=_RATIONAL):
        z = _zero(kind)
        one = {_FLOAT: 1.0, _TPOLY: TPoly.const(1)}.get(kind, Fraction(1))
        return cls._raw([one] + [z] * (order - 1), kind)

    @classmethod
    def zero(cls, order, kind=_RATIONAL):
        return cls._raw([_zero(kind)] * order, kind)

    @property
    def order(self):
        return len(self._c)

    @property
    def kind(self):
        return self._kind

    @property
    def coeffs(self):
        """Tuple ``(c_1, ..., c_N)``."""
        return self._c

    def __getitem__(self, k):
        """Coefficient of ``x**k`` (``k >= 0``; zero outside ``1..N``)."""
        if 1 <= k <= len(self._c):
            return self._c[k - 1]
        if k >= 0:
            return _zero(self._kind)
        raise IndexError(k)

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._kind == other._kind and self._c == other._c

    def __hash__(self):
        return hash((self._kind, self._c))

    def __repr__(self):
        body = ", ".join(str(c) for c in self._c)
        return f"TruncatedSeries([{body}], kind={self._kind!r})"

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, -other)

    def __neg__(self):
        return TruncatedSeries._raw([-c for c in self._c], self._kind)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return self.scale(other)

    def __call__(self, x, t=None):
        return series_eval(self, x, t=t)

    def scale(self, s):
        """Multiply every coefficient by the scalar ``s``."""
        return TruncatedSeries([c * s for c in self._c], kind=self._kind)

    def compose(self, other):
        return series_compose(self, other)

    def truncate(self, order):
        """Explicit re-truncation (or zero-padding) to ``order``."""
        if order < 1:
            raise UsageError("order must be >= 1")
        cs = list(self._c[:order]) + [_zero(self._kind)] * (order - len(self._c))
        return TruncatedSeries._raw(cs, self._kind)

    def to_float(self):
        if self._kind == _TPOLY:
            raise UsageError("evaluate a TPoly series at t before converting")
        return TruncatedSeries._raw([float(c) for c in self._c], _FLOAT)

    def at(self, t):
        """Reduce TPoly coefficients to scalars at flow time ``t``."""
        if self._kind != _TPOLY:
            return self
        cs = [tpoly_eval(c, t) for c in self._c]
        return TruncatedSeries(cs, kind=_RATIONAL if _is_rational(t) else _FLOAT)

    def is_identity(self):
        return bool(self._c[0] == 1) and all(not c for c in self._c[1:])

    def max_abs(self):
        """Largest coefficient magnitude (scalar kinds only)."""
        if self._kind == _TPOLY:
            raise UsageError("max_abs needs scalar coefficients")
        return max(abs(c) for c in self._c)


def _check_pair(a, b):
    if not (isinstance(a, TruncatedSeries) and isinstance(b, TruncatedSeries)):
        raise UsageError("operands must be TruncatedSeries")
    if a.order != b.order:
        raise UsageError(f"order mismatch: {a.order} vs {b.order}")
    if a.kind != b.kind:
        raise UsageError(f"coefficient kind mismatch: {a.kind} vs {b.kind}")


# Dense list helpers.  Lists carry the constant term at index 0 and are
# truncated at index ``n``; they accept any coefficient ring.

def _mul_dense(a, b, n, zero):
    out = [zero] * (n + 1)
    for i, ai in enumerate(a):
        if i > n:
            break
        if not ai:
            continue
        for j in range(0, min(len(b), n + 1 - i)):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def _compose_dense(f, g, n, zero):
    """``f(g)`` for dense lists, ``g[0] == 0``; Horner in the series ring."""
    acc = [zero] * (n + 1)
    for k in range(min(len(f) - 1, n), -1, -1):
        acc[0] = acc[0] + f[k]
        if k:
            acc = _mul_dense(acc, g, n, zero)
    return acc


def _dense(s):
    return [_zero(s.kind)] + list(s.coeffs)


def series_add(a, b):
    """Coefficientwise sum of two series of equal order and kind."""
    _check_pair(a, b)
    return TruncatedSeries._raw([x + y for x, y in zip(a.coeffs, b.coeffs)], a.kind)


def series_mul(a, b):
    """Cauchy product truncated at ``x**N``."""
    _check_pair(a, b)
    n = a.order
    out = _mul_dense(_dense(a), _dense(b), n, _zero(a.kind))
    return TruncatedSeries._raw(out[1:], a.kind)


def series_compose(f, g):
    """``f(g(x))`` truncated at ``x**N``."""
    _check_pair(f, g)
    n = f.order
    out = _compose_dense(_dense(f), _dense(g), n, _zero(f.kind))
    return TruncatedSeries._raw(out[1:], f.kind)


class PowerTable:
    """Coefficients ``P[i][K] = [x**K] g(x)**i`` built while ``g`` is solved.

    ``g`` is determined one coefficient at a time.  Entry ``P[i][K]`` depends
    on ``g_1 .. g_{K-i+1}`` only, so once ``g_k`` is known the entries with
    ``K - i + 1 == k`` can be completed (:meth:`finalize`).
    """

    def __init__(self, order, zero):
        self.order = order
        self.zero = zero
        self.g = [zero] * (order + 1)
        self.P = [[zero] * (order + 1) for _ in range(order + 1)]

    def set(self, k, value):
        self.g[k] = value

    def finalize(self, k):
        g, P, zero = self.g, self.P, self.zero
        P[1][k] = g[k]
        for i in range(2, self.order - k + 2):
            K = k + i - 1
            prev = P[i - 1]
            acc = zero
            for j in range(1, k + 1):
                gj = g[j]
                if gj:
                    p = prev[K - j]
                    if p:
                        acc = acc + gj * p
            P[i][K] = acc

    def bump(self, k, delta, g1_powers):
        """Account for ``g_k`` changing by ``delta`` after :meth:`finalize`.

        Only the lowest-order entries ``P[i][k+i-1]`` move, by
        ``i * g_1**(i-1) * delta``.
        """
        self.g[k] = self.g[k] + delta
        for i in range(1, self.order - k + 2):
            self.P[i][k + i - 1] = self.P[i][k + i - 1] + delta * (i * g1_powers[i - 1])


def series_revert(f):
    """Compositional inverse ``g`` with ``f(g(x)) = x`` through order ``N``."""
    if not isinstance(f, TruncatedSeries):
        raise UsageError("series_revert expects a TruncatedSeries")
    if f.kind == _TPOLY:
        raise UsageError("reversion of TPoly series is not supported")
    f1 = f[1]
    if not f1:
        raise DegenerateError("cannot revert a series with zero linear coefficient")
    n, kind = f.order, f.kind
    zero = _zero(kind)
    a = _dense(f)
    inv1 = (1.0 / f1) if kind == _FLOAT else (1 / Fraction(f1))
    table = PowerTable(n, zero)
    table.set(1, inv1)
    table.finalize(1)
    for k in range(2, n + 1):
        r = zero
        for i in range(2, k + 1):
            if a[i]:
                r = r + a[i] * table.P[i][k]
        table.set(k, -r * inv1)
        table.finalize(k)
    g = TruncatedSeries._raw(table.g[1:], kind)
    if kind == _RATIONAL and not series_compose(f, g).is_identity():
        raise AssertionError("series reversion failed its round-trip check")
    return g


def series_eval(f, x, t=None):
    """Horner evaluation of ``f`` at ``x``.

    For TPoly series a flow time ``t`` must be supplied; coefficients are
    reduced to scalars first.  Exact when every input is rational; a
    non-finite float result raises :class:`NumericRangeError`.
    """
    if f.kind == _TPOLY:
        if t is None:
            raise UsageError("TPoly series need a value of t for evaluation")
        f = f.at(t)
    if f.kind == _RATIONAL and _is_rational(x):
        x = Fraction(x)
        acc = Fraction(0)
    else:
        x = float(x)
        acc = 0.0
    for c in reversed(f.coeffs):
        acc = (acc + c) * x
    if isinstance(acc, float):
        acc = float(acc)
        if not math.isfinite(acc):
            raise NumericRangeError(f"series evaluation overflowed at x={x!r}", )
    return acc
