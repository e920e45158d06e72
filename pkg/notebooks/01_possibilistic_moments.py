"""
Possibilistic moments of fuzzy returns
======================================

A fuzzy number is handled only through its level sets [a1(g), a2(g)].
Expected values, variances and third central moments are level-set
averages weighted by a density f on [0, 1].
"""

import numpy as np

from possport import (central_moment, expected_value, gauss_legendre_01, power, trapezoidal, triangular,
                      triangular_closed_moments, variance)

# a triangular return: peak 5%, spreads 20% to the left and 30% to the right
B = triangular(0.05, 0.2, 0.3)
g = np.linspace(0.0, 1.0, 5)
print("level sets of B")
for gi, lo, hi in zip(g, *B.endpoints(g)):
    print(f"  g = {gi:.2f}: [{lo:+.3f}, {hi:+.3f}]")

# with f(g) = 2g the triangular moments have closed forms
f = power(2)
quad = expected_value(B, f), variance(B, f), central_moment(B, f, 3)
closed = triangular_closed_moments(0.05, 0.2, 0.3)
print("\n           quadrature        closed form")
for name, q, c in zip(("mean", "variance", "third"), quad, closed):
    print(f"{name:>9}  {q: .15f}  {c: .15f}")

# the right spread dominates, so the third central moment is positive:
# B is skewed towards gains.  Mirroring the spreads flips its sign.
print("\nmirrored third moment:", central_moment(triangular(0.05, 0.3, 0.2), f, 3))

# a steeper weighting puts more mass on the core; the variance shrinks
for n in (1, 2, 4, 8):
    print(f"power({n}) variance: {variance(B, power(n)):.6f}")

# the quadrature order matters little for piecewise-linear level sets
T = trapezoidal(0.02, 0.06, 0.15, 0.25)
for order in (2, 8, 64):
    print(f"order {order:>2}: var = {variance(T, f, gauss_legendre_01(order)):.15f}")
