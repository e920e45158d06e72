"""
Optimal allocation without background risk
===========================================

An investor with wealth w splits it between a risk-free asset and a risky
asset whose excess return is the fuzzy number B = k + A, with E_f(A) = 0.
The optimal share alpha(k) solves E_f[B u'(w + alpha B)] = 0.  A second
order expansion in the premium k gives a closed-form approximation whose
error shrinks like k**3.
"""

import numpy as np

from possport import (StandardModel, allocate, approx_alpha_prime0, approx_alpha_second0, hara, power,
                      triangular)

# HARA utility with zeta = -1, eta = 0, gamma = 2: r_u(1) = 2 and P_u(1) = 3
u = hara(-1.0, 0.0, 2.0)
A = triangular(-1.0 / 60.0, 0.2, 0.3)  # centered under f(g) = 2g
base = StandardModel(1.0, A.shift(0.01), power(2), u)

print("alpha'(0)  =", approx_alpha_prime0(base))
print("alpha''(0) =", approx_alpha_second0(base))

print("\n     k     exact      approx     first     second    abs err")
ks = np.array([0.1, 0.05, 0.025, 0.0125])
errs = []
for k in ks:
    rep = allocate(base.with_premium(k))
    errs.append(rep.abs_error)
    print(f"{k:7.4f} {rep.alpha_exact:9.5f} {rep.alpha_approx:9.5f} {rep.first_order_term:9.5f}"
          f" {rep.second_order_term:9.5f} {rep.abs_error:9.2e}")

# halving k divides the error by about eight
slope = np.polyfit(np.log(ks), np.log(errs), 1)[0]
print(f"\nlog-log slope of the error: {slope:.3f}")

# prudence pushes the investor towards the positively skewed asset
for name, B in (("right-skewed", triangular(0.02, 0.2, 0.3)), ("left-skewed", triangular(0.02, 0.3, 0.2))):
    rep = allocate(StandardModel(1.0, B, power(2), u))
    print(f"{name:>13}: E_f(B) = {rep.ef_b:+.4f}, third moment {rep.m3_b:+.2e},"
          f" second-order term {rep.second_order_term:+.4f}")
