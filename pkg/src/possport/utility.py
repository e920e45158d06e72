"""Concave C^3 utility functions and their risk indices.

The HARA family is parameterized as

    u(w) = zeta * (eta + w / gamma) ** (1 - gamma),   eta + w / gamma > 0,

which gives ``1 / r_u(w) = eta + w / gamma`` and
``P_u(w) = (gamma + 1) / gamma * (eta + w / gamma) ** -1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Tuple

import numpy as np

from .errors import DomainError, SingularError

SAMPLE_POINTS = 100
FD_RTOL = 1e-6


@dataclass(frozen=True)
class UtilityFunction:
    """Utility with closed-form derivatives up to third order.

    ``domain`` is the open interval of admissible wealth.  Instances
    compare equal when family and parameters agree; the callables are
    not part of equality except for custom utilities.
    """

    family: str
    params: Tuple[float, ...]
    u: Callable = field(compare=False, repr=False)
    d1: Callable = field(compare=False, repr=False)
    d2: Callable = field(compare=False, repr=False)
    d3: Callable = field(compare=False, repr=False)
    domain: Tuple[float, float] = (-math.inf, math.inf)
    scale: float = 1.0
    _custom_key: object = field(default=None, repr=False)

    def __post_init__(self):
        lo, hi = self.domain
        if not lo < hi:
            raise ValueError(f"utility domain must be a non-empty open interval, got {self.domain}")
        if not (math.isfinite(self.scale) and self.scale > 0.0):
            raise ValueError(f"utility scale must be positive, got {self.scale!r}")
        _validate_shape(self)

    def __call__(self, w):
        return self.scale * self.u(w)

    def prime(self, w):
        return self.scale * self.d1(w)

    def second(self, w):
        return self.scale * self.d2(w)

    def third(self, w):
        return self.scale * self.d3(w)

    def in_domain(self, w) -> bool:
        lo, hi = self.domain
        return bool(np.all((np.asarray(w) > lo) & (np.asarray(w) < hi)))

    def scaled(self, c: float) -> "UtilityFunction":
        """The utility ``c * u``; risk indices are unchanged for c > 0."""
        return UtilityFunction(self.family, self.params, self.u, self.d1, self.d2, self.d3,
                               self.domain, self.scale * c, self._custom_key)

    def _check(self, w):
        if not self.in_domain(w):
            raise DomainError(f"wealth {w!r} outside the utility domain {self.domain}")


def hara(zeta: float, eta: float, gamma: float) -> UtilityFunction:
    """HARA utility ``zeta * (eta + w/gamma)**(1 - gamma)``.

    ``gamma = 1`` is the logarithmic limit ``zeta * log(eta + w)``.  The
    sign of ``zeta`` must make u increasing, i.e. ``zeta (1-gamma)/gamma > 0``
    (``zeta > 0`` in the log case).
    """
    zeta, eta, gamma = float(zeta), float(eta), float(gamma)
    if not all(map(math.isfinite, (zeta, eta, gamma))) or gamma == 0.0:
        raise ValueError("hara parameters must be finite with gamma != 0")
    if gamma == 1.0:
        if zeta <= 0.0:
            raise ValueError("hara with gamma = 1 (log) needs zeta > 0")
        c = zeta
    else:
        c = zeta * (1.0 - gamma) / gamma
        if c <= 0.0:
            raise ValueError(
                f"hara needs zeta*(1-gamma)/gamma > 0 for an increasing utility, got {c!r}"
            )
    if gamma > 0:
        domain = (-eta * gamma, math.inf)
    else:
        domain = (-math.inf, -eta * gamma)

    def base(w):
        return eta + np.asarray(w, dtype=float) / gamma

    if gamma == 1.0:
        def u(w):
            return zeta * np.log(base(w))
    else:
        def u(w):
            return zeta * base(w) ** (1.0 - gamma)

    def d1(w):
        return c * base(w) ** (-gamma)

    def d2(w):
        return -c * base(w) ** (-gamma - 1.0)

    def d3(w):
        return c * (gamma + 1.0) / gamma * base(w) ** (-gamma - 2.0)

    return UtilityFunction("hara", (zeta, eta, gamma), u, d1, d2, d3, domain)


def crra(gamma: float) -> UtilityFunction:
    """Constant relative risk aversion ``w**(1-gamma)/(1-gamma)`` (log at gamma = 1)."""
    gamma = float(gamma)
    if not (math.isfinite(gamma) and gamma > 0.0):
        raise ValueError(f"crra needs gamma > 0, got {gamma!r}")

    if gamma == 1.0:
        def u(w):
            return np.log(np.asarray(w, dtype=float))
    else:
        def u(w):
            return np.asarray(w, dtype=float) ** (1.0 - gamma) / (1.0 - gamma)

    def d1(w):
        return np.asarray(w, dtype=float) ** (-gamma)

    def d2(w):
        return -gamma * np.asarray(w, dtype=float) ** (-gamma - 1.0)

    def d3(w):
        return gamma * (gamma + 1.0) * np.asarray(w, dtype=float) ** (-gamma - 2.0)

    return UtilityFunction("crra", (gamma,), u, d1, d2, d3, (0.0, math.inf))


def cara(a: float) -> UtilityFunction:
    """Exponential utility ``-exp(-a w) / a``."""
    a = float(a)
    if not (math.isfinite(a) and a > 0.0):
        raise ValueError(f"cara needs a > 0, got {a!r}")

    def u(w):
        return -np.exp(-a * np.asarray(w, dtype=float)) / a

    def d1(w):
        return np.exp(-a * np.asarray(w, dtype=float))

    def d2(w):
        return -a * np.exp(-a * np.asarray(w, dtype=float))

    def d3(w):
        return a * a * np.exp(-a * np.asarray(w, dtype=float))

    return UtilityFunction("cara", (a,), u, d1, d2, d3)


def custom(u, d1, d2, d3, domain=(-math.inf, math.inf)) -> UtilityFunction:
    """Wrap user-supplied ``u`` and derivatives; derivatives are checked
    against central differences at sampled points."""
    util = UtilityFunction("custom", (), u, d1, d2, d3, tuple(map(float, domain)),
                           _custom_key=(u, d1, d2, d3))
    check_derivatives(util)
    return util


def sample_domain(domain, points=SAMPLE_POINTS):
    """Deterministic sample of interior points of an open interval."""
    lo, hi = domain
    if math.isfinite(lo) and math.isfinite(hi):
        t = np.linspace(0.0, 1.0, points + 2)[1:-1]
        return lo + t * (hi - lo)
    if math.isfinite(lo):
        return lo + np.geomspace(1e-3, 10.0, points) * max(1.0, abs(lo))
    if math.isfinite(hi):
        return hi - np.geomspace(1e-3, 10.0, points)[::-1] * max(1.0, abs(hi))
    return np.linspace(-1.0, 1.0, points)


def _validate_shape(util):
    w = sample_domain(util.domain)
    d1 = np.asarray(util.prime(w), dtype=float)
    d2 = np.asarray(util.second(w), dtype=float)
    if not (np.all(np.isfinite(d1)) and np.all(np.isfinite(d2))):
        raise ValueError("utility derivatives must be finite inside the domain")
    if np.any(d1 <= 0.0):
        raise ValueError("utility must be increasing (u' > 0) on its domain")
    if np.any(d2 > 0.0):
        raise ValueError("utility must be concave (u'' <= 0) on its domain")


def check_derivatives(util: UtilityFunction, rtol: float = FD_RTOL, points: int = SAMPLE_POINTS):
    """Compare closed-form derivatives with central differences.

    Each derivative is differenced from the one below it (u -> u', u' -> u'',
    u'' -> u''').  Raises ``ValueError`` on disagreement beyond ``rtol``.
    """
    w = sample_domain(util.domain, points)
    lo, hi = util.domain
    # step relative to the local scale, which shrinks near a finite boundary
    h = 1e-4 * np.minimum(np.maximum(1.0, np.abs(w)), np.minimum(w - lo, hi - w))
    pairs = ((util, util.prime, "u'"), (util.prime, util.second, "u''"),
             (util.second, util.third, "u'''"))
    for lower, closed, name in pairs:
        fd = (lower(w + h) - lower(w - h)) / (2.0 * h)
        exact = closed(w)
        err = np.abs(fd - exact)
        scale = np.maximum(np.abs(exact), 1e-300)
        # roundoff floor of the difference quotient
        floor = 1e3 * np.finfo(float).eps * np.abs(lower(w)) / h
        if np.any(err > rtol * scale + floor):
            i = int(np.argmax(err - rtol * scale - floor))
            raise ValueError(f"{name} disagrees with finite differences at w={w[i]!r}")


def arrow_pratt(u: UtilityFunction, w: float) -> float:
    """Absolute risk aversion ``-u''(w) / u'(w)``."""
    u._check(w)
    d1 = float(u.prime(w))
    if d1 == 0.0:
        raise SingularError(f"u'({w!r}) = 0, Arrow-Pratt index undefined")
    return -float(u.second(w)) / d1


def prudence(u: UtilityFunction, w: float) -> float:
    """Absolute prudence ``-u'''(w) / u''(w)``."""
    u._check(w)
    d2 = float(u.second(w))
    if d2 == 0.0:
        raise SingularError(f"u''({w!r}) = 0 (risk-neutral point), prudence index undefined")
    return -float(u.third(w)) / d2


def hara_indices(eta: float, gamma: float, w: float):
    """``(1 / r_u(w), P_u(w) / r_u(w)**2)`` for HARA utility, in closed form."""
    gamma = float(gamma)
    if gamma == 0.0:
        raise ValueError("hara needs gamma != 0")
    inv_r = eta + w / gamma
    if not inv_r > 0.0:
        raise DomainError(f"hara requires eta + w/gamma > 0, got {inv_r!r}")
    return inv_r, (gamma + 1.0) / gamma * inv_r
