"""Finite discrete random variables and mixed (fuzzy x random) expected utility."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DomainError
from .fuzzy import FuzzyNumber, WeightingFunction
from .quadrature import QuadratureRule, default_rule

PROB_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteRandomVariable:
    """Outcomes with probabilities; duplicate outcomes are allowed."""

    outcomes: Tuple[float, ...]
    probabilities: Tuple[float, ...]

    def __post_init__(self):
        z = tuple(float(x) for x in self.outcomes)
        p = tuple(float(x) for x in self.probabilities)
        if len(z) == 0 or len(z) != len(p):
            raise ValueError("outcomes and probabilities must be non-empty and of equal length")
        if not all(map(math.isfinite, z)):
            raise ValueError("outcomes must be finite")
        if not all(math.isfinite(x) and x >= 0.0 for x in p):
            raise ValueError("probabilities must be finite and >= 0")
        total = math.fsum(p)
        if abs(total - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities must sum to 1, got {total!r}")
        object.__setattr__(self, "outcomes", z)
        object.__setattr__(self, "probabilities", p)

    @classmethod
    def constant(cls, c: float) -> "DiscreteRandomVariable":
        return cls((c,), (1.0,))

    @property
    def z(self) -> np.ndarray:
        return np.array(self.outcomes)

    @property
    def p(self) -> np.ndarray:
        return np.array(self.probabilities)

    @property
    def support(self):
        return min(self.outcomes), max(self.outcomes)


def mean(Z: DiscreteRandomVariable) -> float:
    """M(Z) = sum p_i z_i."""
    return math.fsum(p * z for z, p in zip(Z.outcomes, Z.probabilities))


def expect(g, Z: DiscreteRandomVariable) -> float:
    """M(g(Z)) = sum p_i g(z_i)."""
    values = []
    for z in Z.outcomes:
        v = float(g(z))
        if not math.isfinite(v):
            raise DomainError(f"function is not finite at outcome z={z!r}")
        values.append(v)
    return math.fsum(p * v for p, v in zip(Z.probabilities, values))


def mixed_expected_utility(u2, A: FuzzyNumber, Z: DiscreteRandomVariable, f: WeightingFunction,
                           rule: Optional[QuadratureRule] = None) -> float:
    """E_f(u2(A, Z)): level-set average of the expectations M(u2(a_i(g), Z)).

    ``u2(x, z)`` must broadcast over numpy arrays (x along rows, z along
    columns).
    """
    rule = rule or default_rule()
    g = rule.nodes
    a1, a2 = A.endpoints(g)
    z, p = Z.z[None, :], Z.p
    total = np.zeros_like(g)
    for which, a in (("lower", a1), ("upper", a2)):
        with np.errstate(all="ignore"):
            values = np.asarray(u2(a[:, None], z), dtype=float)
        values = np.broadcast_to(values, (a.size, z.size))
        bad = ~np.isfinite(values)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise DomainError(
                f"utility is not finite at ({which} endpoint {a[i]!r}, outcome {Z.outcomes[j]!r})"
            )
        total += values @ p
    return float(np.dot(rule.weights, 0.5 * total * f(g)))
