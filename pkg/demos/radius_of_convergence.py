"""
How far does the sine flow series converge?
===========================================

Root-test estimates 1/|c_k|^(1/k) at t = 1/2 from an exact order-81 series.
The estimates never settle on a value; past k of about 60 they keep
falling.
"""

from fractions import Fraction

from fraciter import catalog_get, radius_estimate, solve_flow_numeric

sine = catalog_get("sine")
flow = solve_flow_numeric(sine.series(81), Fraction(1, 2), 81)
report = radius_estimate(flow, None, range(1, 82))
for k, est in report.estimates:
    if k % 10 == 1:
        print(f"k={k:2d}  1/|c_k|^(1/k) = {est:.4f}")
print("zero coefficients skipped:", len(report.skipped))
