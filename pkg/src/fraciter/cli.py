"""Command-line front end: ``fraciter <subcommand> [options]``.

Sweeps over ``--t``/``--x`` grids emit one row per point.  A point that
leaves a map's domain gets an ``error`` entry instead of values; the run
exits 0 if any row succeeded and 3 otherwise.  Usage errors exit 2.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .accuracy import (
    extrema_table,
    leading_error_logistic2,
    radius_estimate,
    relative_error,
    successive_difference,
)
from .conjugation import iterate_eval
from .exceptions import (
    DegenerateError,
    DomainError,
    FracIterError,
    NumericRangeError,
    UsageError,
)
from .maps import CATALOG, catalog_get
from .schroeder import koenigs_series, parabolic_psi
from .series import TPoly, format_tpoly
from .solver import solve_flow_exact, solve_flow_numeric, velocity_series

__all__ = ["RunConfig", "parse_grid", "run", "main", "build_parser"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3

SUBCOMMANDS = ("coeffs", "iterate", "error", "leading", "schroeder", "radius", "extrema")
POINT_ERRORS = (DomainError, NumericRangeError, DegenerateError, ArithmeticError)


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI invocation needs."""

    command: str
    map: str = "sine"
    lam: Optional[float] = None
    t: tuple = ()
    x: tuple = ()
    N: int = 9
    n: int = 5
    exact: bool = False
    kind: str = "rel"
    k: tuple = ()
    fmt: str = "csv"
    out: Optional[str] = None

    def __post_init__(self):
        if self.command not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.command!r}")
        if self.N < 2:
            raise UsageError(f"N must be >= 2, got {self.N}")
        if self.n < 0:
            raise UsageError(f"n must be >= 0, got {self.n}")
        if self.fmt not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.fmt!r}")


def parse_grid(text):
    """``lo:hi:count`` (inclusive, ``count`` points) or a comma list of numbers."""
    text = text.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise UsageError(f"grid {text!r} must look like lo:hi:count")
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1:
                raise UsageError(f"grid {text!r}: count must be >= 1")
            if hi < lo:
                raise UsageError(f"grid {text!r}: lo must not exceed hi")
            if count == 1:
                return (lo,)
            return tuple(float(v) for v in np.linspace(lo, hi, count))
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise UsageError(f"cannot parse grid {text!r}: {exc}") from exc


def _parse_k(text):
    try:
        if ":" in text:
            lo, hi = (int(v) for v in text.split(":"))
            if hi < lo:
                raise UsageError(f"k range {text!r}: lo must not exceed hi")
            return tuple(range(lo, hi + 1))
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"cannot parse k range {text!r}: {exc}") from exc


def _exact_t(t):
    return Fraction(repr(float(t)))


def _spec(cfg):
    if cfg.map == "logistic" and cfg.lam is None:
        raise UsageError("--map logistic needs --lambda")
    return catalog_get(cfg.map, cfg.lam if cfg.map == "logistic" else None)


def _require(values, flag):
    if not values:
        raise UsageError(f"this subcommand needs {flag}")
    return values


def _sweep(cfg, fields, point):
    """Rows over the ``t`` x ``x`` grid; ``point(t, x)`` returns the value columns."""
    rows, ok = [], 0
    for t in _require(cfg.t, "--t"):
        for x in _require(cfg.x, "--x"):
            row = {"t": t, "x": x}
            try:
                row.update(point(t, x))
                row["error"] = None
                ok += 1
            except POINT_ERRORS as exc:
                row.update({f: None for f in fields})
                row["error"] = str(exc)
            rows.append(row)
    return rows, ok


def _cmd_coeffs(cfg):
    spec = _spec(cfg)
    series = spec.series(cfg.N)
    if cfg.exact:
        if not (series.is_parabolic and series.kind == "rational"):
            raise UsageError("--exact coefficients need a parabolic map with rational coefficients")
        flow = solve_flow_exact(series, cfg.N)
        return [{"k": k, "c_k": flow.coefficient(k)} for k in range(1, cfg.N + 1)], 1
    rows = []
    for t in _require(cfg.t, "--t"):
        tt = _exact_t(t) if series.is_parabolic and series.kind == "rational" else t
        flow = solve_flow_numeric(series, tt, cfg.N)
        for k in range(1, cfg.N + 1):
            rows.append({"t": t, "k": k, "c_k": float(flow.coefficient(k))})
    return rows, 1


def _cmd_iterate(cfg):
    spec = _spec(cfg)
    return _sweep(cfg, ["value"], lambda t, x: {"value": iterate_eval(spec, t, x, cfg.N, cfg.n)})


def _cmd_error(cfg):
    spec = _spec(cfg)
    if cfg.kind == "rel":
        if spec.exact_flow is None:
            raise UsageError(f"map {spec.label()} has no closed-form flow; use --kind succ")
        fn, col = relative_error, "R"
    elif cfg.kind == "succ":
        fn, col = successive_difference, "S"
    else:
        raise UsageError(f"--kind must be rel or succ, got {cfg.kind!r}")
    return _sweep(cfg, [col], lambda t, x: {col: fn(spec, t, x, cfg.N, cfg.n).value})


def _cmd_leading(cfg):
    if cfg.map != "logistic" or cfg.lam is None or float(cfg.lam) != 2.0:
        raise UsageError("the leading-error formula is for --map logistic --lambda 2")
    spec = _spec(cfg)

    def point(t, x):
        exact = relative_error(spec, t, x, cfg.N, cfg.n).value
        lead = leading_error_logistic2(t, x, cfg.N, cfg.n)
        return {"R": exact, "leading": lead, "delta_R": exact - lead}

    return _sweep(cfg, ["R", "leading", "delta_R"], point)


def _cmd_schroeder(cfg):
    spec = _spec(cfg)
    series = spec.series(cfg.N)
    rows = []
    if series.is_parabolic:
        if series.kind != "rational":
            raise UsageError("parabolic Schroeder expansions need rational map coefficients")
        psi = parabolic_psi(velocity_series(solve_flow_exact(series, cfg.N)))
        items = [("rho", psi.rho)] + [(f"p_{k}", v) for k, v in sorted(psi.p.items())]
        for name, v in items:
            rows.append({"name": name, "exact": v, "decimal": float(v)})
        rows.append({"name": "kappa", "exact": "e", "decimal": psi.kappa})
    else:
        psi = koenigs_series(series, cfg.N)
        for k, b in enumerate(psi.coeffs, start=1):
            rows.append({"name": f"b_{k}", "exact": b, "decimal": float(b)})
        rows.append({"name": "kappa", "exact": psi.multiplier, "decimal": psi.kappa})
    return rows, 1


def _cmd_radius(cfg):
    spec = _spec(cfg)
    ks = cfg.k or tuple(range(1, cfg.N + 1))
    order = max(cfg.N, max(ks))
    series = spec.series(order)
    rows = []
    for t in _require(cfg.t, "--t"):
        tt = _exact_t(t) if series.kind == "rational" else t
        flow = solve_flow_numeric(series, tt, order)
        for k, est in radius_estimate(flow, None, ks).estimates:
            rows.append({"t": t, "k": k, "estimate": est})
    return rows, 1


def _cmd_extrema(cfg):
    ts = cfg.t or parse_grid("0:1:11")
    rows = [
        {"t": t, "computed": a, "formula": f, "rel_discrepancy": r}
        for t, a, f, r in extrema_table(ts, cfg.N, cfg.n)
    ]
    return rows, 1


_COMMANDS = {
    "coeffs": _cmd_coeffs,
    "iterate": _cmd_iterate,
    "error": _cmd_error,
    "leading": _cmd_leading,
    "schroeder": _cmd_schroeder,
    "radius": _cmd_radius,
    "extrema": _cmd_extrema,
}


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, TPoly):
        return format_tpoly(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _json_value(v):
    if v is None or isinstance(v, (bool, int)):
        return v
    if isinstance(v, float):
        return v if math.isfinite(v) else repr(v)
    return _cell(v)


def format_rows(rows, fmt):
    """Render rows as CSV (header + LF lines) or a JSON array."""
    if fmt == "json":
        data = [{k: _json_value(v) for k, v in row.items()} for row in rows]
        return json.dumps(data, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0]) if rows else []
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row.get(h)) for h in header])
    return buf.getvalue()


def run(cfg, stdout=None):
    """Execute a :class:`RunConfig`; returns the exit status."""
    rows, ok = _COMMANDS[cfg.command](cfg)
    text = format_rows(rows, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    else:
        (stdout or sys.stdout).write(text)
    return EXIT_OK if ok else EXIT_DOMAIN


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--map", default="sine", choices=CATALOG)
    common.add_argument("--lambda", dest="lam", type=float, default=None,
                        help="logistic parameter, 0 < lambda <= 4")
    common.add_argument("--t", default=None, help="value, comma list, or lo:hi:count")
    common.add_argument("--x", default=None, help="lo:hi:count (inclusive) or comma list")
    common.add_argument("--N", type=int, default=9, help="series order (>= 2)")
    common.add_argument("--n", type=int, default=5, help="conjugation depth")
    common.add_argument("--exact", action="store_true", help="exact polynomial-in-t coefficients")
    common.add_argument("--format", dest="fmt", default="csv", choices=("csv", "json"))
    common.add_argument("--out", default=None, help="output path (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="fraciter", description="Fractional iterates of maps near a fixed point."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("coeffs", parents=[common], help="flow series coefficients c_k")
    sub.add_parser("iterate", parents=[common], help="A_{n,t}(x) over a grid")
    p = sub.add_parser("error", parents=[common], help="relative errors or successive differences")
    p.add_argument("--kind", default="rel", choices=("rel", "succ"))
    sub.add_parser("leading", parents=[common], help="lambda=2 leading-error comparison")
    sub.add_parser("schroeder", parents=[common], help="Schroeder / Koenigs constants")
    p = sub.add_parser("radius", parents=[common], help="root-test radius estimates")
    p.add_argument("--k", default=None, help="k range lo:hi or comma list")
    sub.add_parser("extrema", parents=[common], help="sine extrema versus (pi/2)^(1-sqrt t)")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            map=args.map,
            lam=args.lam,
            t=parse_grid(args.t) if args.t else (),
            x=parse_grid(args.x) if args.x else (),
            N=args.N,
            n=args.n,
            exact=args.exact,
            kind=getattr(args, "kind", "rel"),
            k=_parse_k(args.k) if getattr(args, "k", None) else (),
            fmt=args.fmt,
            out=args.out,
        )
        return run(cfg)
    except UsageError as exc:
        print(f"fraciter: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FracIterError, ArithmeticError) as exc:
        print(f"fraciter: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
