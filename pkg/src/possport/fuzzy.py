"""Fuzzy numbers given by their level sets, and possibilistic indicators.

A fuzzy number ``A`` is described by the endpoints of its gamma-cuts,
``[A]^gamma = [a1(gamma), a2(gamma)]`` for gamma in [0, 1].  Given a
weighting density ``f`` on [0, 1], the possibilistic expected utility of
``A`` with respect to a utility ``u`` is

    E_f(u(A)) = 1/2 * int_0^1 [u(a1(g)) + u(a2(g))] f(g) dg

and expected value, variance and higher moments are special cases.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from .errors import DomainError
from .quadrature import QuadratureRule, default_rule, evaluate_at_nodes

GRID_POINTS = 1000
GRID_TOL = 1e-12
DENSITY_TOL = 1e-10


# ---------------------------------------------------------------------------
# weighting functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightingFunction:
    """Non-negative, non-decreasing density on [0, 1].

    Use :func:`power` for ``f(g) = n g**(n-1)`` or :meth:`custom` for a
    user-supplied density, which is validated (never normalized).
    """

    kind: str
    exponent: Optional[float] = None
    custom_density: Optional[Callable] = None

    def __post_init__(self):
        if self.kind == "power":
            n = self.exponent
            if n is None or not math.isfinite(n) or n < 1.0:
                raise ValueError(
                    f"power weighting needs exponent >= 1 (f must be non-decreasing), got {n!r}"
                )
            object.__setattr__(self, "exponent", float(n))
        elif self.kind == "custom":
            if not callable(self.custom_density):
                raise TypeError("custom weighting needs a callable density")
            _validate_density(self.custom_density)
        else:
            raise ValueError(f"unknown weighting kind {self.kind!r}")

    @classmethod
    def custom(cls, density):
        return cls("custom", custom_density=density)

    def __call__(self, gamma):
        gamma = np.asarray(gamma, dtype=float)
        if self.kind == "power":
            n = self.exponent
            if n == 1.0:
                return np.ones_like(gamma)
            return n * gamma ** (n - 1.0)
        return evaluate_at_nodes(self.custom_density, gamma)

    def __repr__(self):
        if self.kind == "power":
            return f"power({self.exponent:g})"
        return f"WeightingFunction.custom({self.custom_density!r})"


def power(n: float = 2.0) -> WeightingFunction:
    """Weighting ``f(g) = n * g**(n - 1)``; power(1) is uniform, power(2) is 2g."""
    return WeightingFunction("power", exponent=n)


def _validate_density(density):
    grid = np.linspace(0.0, 1.0, GRID_POINTS)
    values = evaluate_at_nodes(density, grid)
    if not np.all(np.isfinite(values)):
        raise ValueError("weighting density must be finite on [0, 1]")
    if np.any(values < -GRID_TOL):
        raise ValueError("weighting density must be non-negative on [0, 1]")
    if np.any(np.diff(values) < -GRID_TOL):
        raise ValueError("weighting density must be non-decreasing on [0, 1]")
    total, _ = integrate.quad(lambda g: float(density(g)), 0.0, 1.0, epsabs=1e-14, epsrel=1e-13, limit=200)
    if abs(total - 1.0) > DENSITY_TOL:
        raise ValueError(f"weighting density must integrate to 1 over [0, 1], got {total!r}")


# ---------------------------------------------------------------------------
# fuzzy numbers
# ---------------------------------------------------------------------------


def _finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def _spread(name, value):
    value = _finite(name, value)
    if value < 0.0:
        raise ValueError(f"{name} must be >= 0, got {value!r}")
    return value


class FuzzyNumber(ABC):
    """A fuzzy number, accessed only through its level-set endpoints."""

    @abstractmethod
    def endpoints(self, gamma):
        """Return ``(a1(gamma), a2(gamma))`` as float arrays."""

    def lower(self, gamma):
        return self.endpoints(gamma)[0]

    def upper(self, gamma):
        return self.endpoints(gamma)[1]

    @property
    def support(self):
        """Closure of the support, ``(a1(0), a2(0))``."""
        a1, a2 = self.endpoints(np.zeros(1))
        return float(a1[0]), float(a2[0])

    def shift(self, offset: float) -> "FuzzyNumber":
        """The fuzzy number ``A + offset`` (every level set translated)."""
        return Shifted(self, offset)

    def __add__(self, offset):
        if isinstance(offset, (int, float, np.floating, np.integer)):
            return self.shift(float(offset))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, offset):
        if isinstance(offset, (int, float, np.floating, np.integer)):
            return self.shift(-float(offset))
        return NotImplemented


@dataclass(frozen=True)
class Triangular(FuzzyNumber):
    """Peak ``b``; level sets ``[b - (1-g) left, b + (1-g) right]``."""

    peak: float
    left: float
    right: float

    def __post_init__(self):
        object.__setattr__(self, "peak", _finite("peak", self.peak))
        object.__setattr__(self, "left", _spread("left spread", self.left))
        object.__setattr__(self, "right", _spread("right spread", self.right))

    def endpoints(self, gamma):
        h = 1.0 - np.asarray(gamma, dtype=float)
        return self.peak - h * self.left, self.peak + h * self.right

    def shift(self, offset):
        return Triangular(self.peak + offset, self.left, self.right)


@dataclass(frozen=True)
class Trapezoidal(FuzzyNumber):
    """Core ``[core_low, core_high]`` with linear flanks of the given spreads."""

    core_low: float
    core_high: float
    left: float
    right: float

    def __post_init__(self):
        object.__setattr__(self, "core_low", _finite("core_low", self.core_low))
        object.__setattr__(self, "core_high", _finite("core_high", self.core_high))
        object.__setattr__(self, "left", _spread("left spread", self.left))
        object.__setattr__(self, "right", _spread("right spread", self.right))
        if self.core_low > self.core_high:
            raise ValueError(f"core must satisfy core_low <= core_high, got [{self.core_low}, {self.core_high}]")

    def endpoints(self, gamma):
        h = 1.0 - np.asarray(gamma, dtype=float)
        return self.core_low - h * self.left, self.core_high + h * self.right

    def shift(self, offset):
        return Trapezoidal(self.core_low + offset, self.core_high + offset, self.left, self.right)


@dataclass(frozen=True)
class Crisp(FuzzyNumber):
    """A real number seen as a fuzzy number with degenerate level sets."""

    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", _finite("value", self.value))

    def endpoints(self, gamma):
        c = np.full(np.shape(gamma), self.value, dtype=float)
        return c, c.copy()

    def shift(self, offset):
        return Crisp(self.value + offset)


@dataclass(frozen=True)
class Shifted(FuzzyNumber):
    """``base + offset`` for an arbitrary base fuzzy number."""

    base: FuzzyNumber
    offset: float

    def __post_init__(self):
        object.__setattr__(self, "offset", _finite("offset", self.offset))
        if isinstance(self.base, Shifted):
            object.__setattr__(self, "offset", self.offset + self.base.offset)
            object.__setattr__(self, "base", self.base.base)

    def endpoints(self, gamma):
        a1, a2 = self.base.endpoints(gamma)
        return a1 + self.offset, a2 + self.offset

    def shift(self, offset):
        return Shifted(self.base, self.offset + offset)


def triangular(peak, left, right) -> Triangular:
    return Triangular(peak, left, right)


def trapezoidal(core_low, core_high, left, right) -> Trapezoidal:
    return Trapezoidal(core_low, core_high, left, right)


def crisp(value) -> Crisp:
    return Crisp(value)


def check_level_sets(A: FuzzyNumber, points: int = GRID_POINTS, tol: float = GRID_TOL) -> None:
    """Raise ``ValueError`` unless the level sets of ``A`` are nested intervals."""
    grid = np.linspace(0.0, 1.0, points)
    a1, a2 = A.endpoints(grid)
    if not (np.all(np.isfinite(a1)) and np.all(np.isfinite(a2))):
        raise ValueError("level-set endpoints must be finite")
    if np.any(np.diff(a1) < -tol):
        raise ValueError("lower endpoint a1 must be non-decreasing in gamma")
    if np.any(np.diff(a2) > tol):
        raise ValueError("upper endpoint a2 must be non-increasing in gamma")
    if np.any(a1 - a2 > tol):
        raise ValueError("level sets must satisfy a1(gamma) <= a2(gamma)")


# ---------------------------------------------------------------------------
# possibilistic indicators
# ---------------------------------------------------------------------------


def _eval_utility(u, x, which):
    values = evaluate_at_nodes(u, x)
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise DomainError(f"utility is not finite at the {which} endpoint value {x[i]!r}")
    return values


def possibilistic_expected_utility(u, A: FuzzyNumber, f: WeightingFunction,
                                   rule: Optional[QuadratureRule] = None) -> float:
    """E_f(u(A)): weighted average of ``u`` over both level-set endpoints.

    ``u`` should accept numpy arrays; scalar-only callables are applied
    element-wise.
    """
    rule = rule or default_rule()
    g = rule.nodes
    a1, a2 = A.endpoints(g)
    values = 0.5 * (_eval_utility(u, a1, "lower") + _eval_utility(u, a2, "upper")) * f(g)
    return float(np.dot(rule.weights, values))


def expected_value(A: FuzzyNumber, f: WeightingFunction, rule=None) -> float:
    return possibilistic_expected_utility(lambda x: x, A, f, rule)


def nth_moment(A: FuzzyNumber, f: WeightingFunction, n: int, rule=None) -> float:
    """Raw moment E_f(A**n)."""
    if int(n) != n or n < 1:
        raise ValueError(f"moment order must be a positive integer, got {n!r}")
    n = int(n)
    return possibilistic_expected_utility(lambda x: x**n, A, f, rule)


def central_moment(A: FuzzyNumber, f: WeightingFunction, n: int, rule=None) -> float:
    """E_f[(A - E_f(A))**n]; n = 2 is the variance, n = 3 the skew input."""
    if int(n) != n or n < 2:
        raise ValueError(f"central moment order must be an integer >= 2, got {n!r}")
    n = int(n)
    lo, hi = A.support
    if lo == hi:
        return 0.0
    mean = expected_value(A, f, rule)
    return possibilistic_expected_utility(lambda x: (x - mean) ** n, A, f, rule)


def variance(A: FuzzyNumber, f: WeightingFunction, rule=None) -> float:
    """Possibilistic variance, the central second moment (always >= 0)."""
    return central_moment(A, f, 2, rule)


def triangular_closed_moments(peak, left, right):
    """Mean, variance and third central moment of a triangular number for f(g) = 2g.

    Only valid for the ``power(2)`` weighting.
    """
    b, a, c = float(peak), float(left), float(right)
    if a < 0.0 or c < 0.0:
        raise ValueError("spreads must be >= 0")
    mean = b + (c - a) / 6.0
    var = (a * a + c * c + a * c) / 18.0
    third = 19.0 * (c**3 - a**3) / 1080.0 + a * c * (c - a) / 72.0
    return mean, var, third

