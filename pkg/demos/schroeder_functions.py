"""
Schroeder and Koenigs functions
===============================

Hyperbolic maps linearize through a Koenigs series; parabolic maps through
an expansion x^rho exp(sum p_k x^k) obtained by integrating 1/v for the
flow velocity v.
"""

from fraciter import (
    catalog_get,
    flow_from_koenigs,
    koenigs_series,
    parabolic_psi,
    psi_residual,
    solve_flow_exact,
    velocity_series,
)

log2 = catalog_get("logistic", 2.0)
psi = koenigs_series(log2.series(60), 60)
print("Koenigs b_k for lambda=2:", [str(b) for b in psi.coeffs[:8]])
for t in (0.25, 0.5, 0.75):
    y = flow_from_koenigs(psi, t, 0.1)
    print(f"t={t}: psi^-1(2^t psi(0.1)) = {y:.15f}  closed flow {log2.exact_flow(t, 0.1):.15f}")

for name in ("moebius", "sine"):
    spec = catalog_get(name)
    expansion = parabolic_psi(velocity_series(solve_flow_exact(spec.series(9), 9)))
    terms = ", ".join(f"p_{k}={v}" for k, v in sorted(expansion.p.items()) if v)
    print(f"{name}: rho={expansion.rho}, {terms}")
    for x in (0.1, 0.2, 0.3):
        print(f"   residual at x={x}: {psi_residual(spec, expansion, x):+.2e}")
