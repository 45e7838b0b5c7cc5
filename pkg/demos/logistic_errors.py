"""
Error structure for the logistic map at lambda = 2
==================================================

At lambda = 2 the flow is 1/2 (1 - (1-2x)^(2^t)).  The leading error of the
conjugated series has a closed hypergeometric form, and successive
conjugations shrink the error by about 2^-N.
"""

import numpy as np

from fraciter import (
    catalog_get,
    leading_error_logistic2,
    logistic2_coefficient,
    relative_error,
    scaling_check,
    solve_flow_numeric,
)

log2 = catalog_get("logistic", 2.0)

# series coefficients against the product formula
flow = solve_flow_numeric(log2.series(8), 0.5, 8)
for k in range(1, 9):
    print(f"c_{k}(1/2) = {flow.coefficient(k):+.15e}   product formula {logistic2_coefficient(k, 0.5):+.15e}")

# N = 5, n = 7: errors of a few parts in 1e12 across the whole interval
xs = np.linspace(0.01, 0.49, 97)
for t in (0.5, 0.75):
    R = [relative_error(log2, t, x, 5, 7).value for x in xs]
    print(f"t={t}: max |R| = {max(map(abs, R)):.3e}")

# exact versus leading-order error
print(f"{'x':>5} {'R':>12} {'leading':>12}")
for x in (0.1, 0.2, 0.3, 0.4, 0.45):
    print(f"{x:5.2f} {relative_error(log2, 0.5, x, 5, 5).value:12.4e} "
          f"{leading_error_logistic2(0.5, x, 5, 5):12.4e}")

# one more conjugation divides the error by about 2^5
for x in (0.3, 0.4, 0.45):
    print(f"x={x}: 2^5 R(6)/R(5) = {scaling_check(log2, 0.5, x, 5, 5):.4f}")
