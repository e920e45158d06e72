"""
Adding a probabilistic background risk
======================================

Final wealth now also carries a random shock Z that cannot be traded.
The fuzzy and random components combine through the mixed expected
utility E_f[u(w + beta B + Z)].  The approximate allocation replaces
1/r_u(w) by 1/r_u(w) - M(Z) and has a pole where M(Z) P_u(w) = 1.
"""

from possport import (DiscreteRandomVariable, MixedModel, SingularError, StandardModel, allocate,
                      approx_beta_second0, hara, power, triangular)

u = hara(-1.0, 0.0, 2.0)
A = triangular(-1.0 / 60.0, 0.2, 0.3)
B = A.shift(0.01)
f = power(2)

alpha = allocate(StandardModel(1.0, B, f, u))
print(f"no background risk: alpha = {alpha.alpha_exact:.5f} (approx {alpha.alpha_approx:.5f})")

# a degenerate Z = 0 gives back the standard model
flat = allocate(MixedModel(1.0, B, f, u, DiscreteRandomVariable.constant(0.0)))
print(f"Z = 0:              beta  = {flat.alpha_exact:.5f} (approx {flat.alpha_approx:.5f})")

# a two-point shock with mean 0.01 eps
print("\n  eps    beta exact  beta approx  abs err")
for eps in (1.0, 0.5, 0.25, 0.1, 0.01):
    Z = DiscreteRandomVariable((0.11 * eps, -0.09 * eps), (0.5, 0.5))
    rep = allocate(MixedModel(1.0, B, f, u, Z))
    print(f"{eps:5.2f}  {rep.alpha_exact:10.5f}  {rep.alpha_approx:10.5f}  {rep.abs_error:.2e}")

# the error is not monotone in eps for large shocks: the expansion keeps
# the mean of Z but not its higher moments, and the two omissions partly
# cancel near eps = 1.  It settles to the no-background error as eps -> 0.

# the second-order coefficient changes sign across M(Z) P_u(w) = 1
for mz in (0.3, 1.0 / 3.0, 0.36):
    m = MixedModel(1.0, B, f, u, DiscreteRandomVariable.constant(mz))
    try:
        print(f"M(Z) = {mz:.4f}: beta''(0) = {approx_beta_second0(m):+.3f}")
    except SingularError as exc:
        print(f"M(Z) = {mz:.4f}: {exc}")
