"""
Conjugation errors for x/(1-x)
==============================

The rational map has the closed flow x/(1-xt), so the relative error of
the n-fold conjugated series can be compared against an exact formula and
its large-n power law.
"""

from fraciter import catalog_get, relative_error, solve_flow_exact, format_tpoly

moebius = catalog_get("moebius")

flow = solve_flow_exact(moebius.series(6), 6)
print("c_k(t):", [format_tpoly(c) for c in flow.coeffs])


def closed(N, n, t, x):
    q = (t * x / (1 + n * x)) ** N
    return (1 - t * x + n * x) / (1 - t * x + n * x * q) * q


t, x = 0.5, 0.3
print(f"{'N':>2} {'n':>5} {'R':>12} {'formula':>12}")
for N in (2, 3, 5):
    for n in (1, 10, 100):
        R = relative_error(moebius, t, x, N, n).value
        print(f"{N:2d} {n:5d} {R:12.4e} {closed(N, n, t, x):12.4e}")

# R ~ t^N x / ((1 - t x) n^(N-1)) for large n
N = 3
for n in (10, 100, 1000):
    R = relative_error(moebius, t, x, N, n).value
    print(f"n={n:5d}  R n^(N-1) (1-tx)/(t^N x) = {R * n ** (N - 1) * (1 - t * x) / (t**N * x):.5f}")
