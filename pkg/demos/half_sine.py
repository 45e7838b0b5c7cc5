"""
The functional square root of sine
==================================

Solve the unit-step equation for the sine flow, conjugate the truncated
series five times, and check the half-iterate against sine itself.
"""

import math
from fractions import Fraction

import numpy as np

from fraciter import catalog_get, extrema_table, format_tpoly, iterate_eval, solve_flow_exact

sine = catalog_get("sine")

# exact coefficients, polynomials in t
flow = solve_flow_exact(sine.series(9), 9)
for k in range(1, 10, 2):
    print(f"c_{k}(t) = {format_tpoly(flow.coefficient(k))}")

# at t = 1/2 the coefficients are plain rationals
half = flow.series(Fraction(1, 2))
print("half-iterate series:", [str(c) for c in half.coeffs])

# A_{5,1/2} composed with itself should give back sine
xs = np.linspace(0.1, 3.0, 8)
for x in xs:
    h = iterate_eval(sine, 0.5, x)
    hh = iterate_eval(sine, 0.5, h)
    print(f"x={x:.3f}  sin_1/2(x)={h:.10f}  sin_1/2(sin_1/2(x)) - sin(x) = {hh - math.sin(x):+.2e}")

# the conjugated series is 2 pi periodic even though the series is not
print("periodicity defect:", iterate_eval(sine, 0.5, 1.0 + 2 * math.pi) - iterate_eval(sine, 0.5, 1.0))

# the maxima at pi/2 follow (pi/2)^(1 - sqrt t) to a few parts per mille
print(f"{'t':>5} {'A_5,t(pi/2)':>14} {'(pi/2)^(1-sqrt t)':>18} {'rel':>10}")
for t, a, f, r in extrema_table([k / 10 for k in range(11)]):
    print(f"{t:5.1f} {a:14.10f} {f:18.10f} {r:10.2e}")
