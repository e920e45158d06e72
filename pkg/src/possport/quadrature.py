"""Gauss-Legendre quadrature on the unit interval.

Every possibilistic indicator is an integral over the level parameter
gamma in [0, 1], so this module is the single integration back end.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QuadratureError

DEFAULT_ORDER = 64
MAX_ORDER = 512

_NEWTON_TOL = 1e-15
_NEWTON_MAXITER = 100


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes in (0, 1) and positive weights summing to one."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size == 0:
            raise QuadratureError("nodes and weights must be non-empty 1-d arrays of equal length")
        if not (np.all(nodes > 0.0) and np.all(nodes < 1.0) and np.all(np.diff(nodes) > 0.0)):
            raise QuadratureError("nodes must be strictly increasing inside (0, 1)")
        if not np.all(weights > 0.0):
            raise QuadratureError("weights must be positive")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def order(self) -> int:
        return self.nodes.size

    def __len__(self):
        return self.nodes.size

    def __repr__(self):
        return f"QuadratureRule(order={self.order})"


def _legendre_with_derivative(n, x):
    """P_n(x) and P_n'(x) by the three-term recurrence (n >= 2)."""
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    return p1, n * (x * p1 - p0) / (x * x - 1.0)


def _legendre_roots(n):
    """Non-negative roots of P_n (descending) and P_n' at those roots."""
    i = np.arange(1, (n + 1) // 2 + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(_NEWTON_MAXITER):
        p, dp = _legendre_with_derivative(n, x)
        step = p / dp
        x = x - step
        if np.max(np.abs(step)) <= _NEWTON_TOL:
            break
    else:
        raise QuadratureError(f"Newton iteration for Legendre roots did not converge (n={n})")
    return x, _legendre_with_derivative(n, x)[1]


@lru_cache(maxsize=32)
def gauss_legendre_01(n: int = DEFAULT_ORDER) -> QuadratureRule:
    """n-point Gauss-Legendre rule mapped affinely from [-1, 1] to [0, 1].

    Exact for polynomials of degree <= 2n - 1.
    """
    if isinstance(n, bool) or int(n) != n or not 1 <= n <= MAX_ORDER:
        raise QuadratureError(f"quadrature order must be an integer in [1, {MAX_ORDER}], got {n!r}")
    n = int(n)
    if n == 1:
        return QuadratureRule(np.array([0.5]), np.array([1.0]))
    x, dp = _legendre_roots(n)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    # roots come out descending in x; mirror to fill the negative half
    tail = slice(-2, None, -1) if n % 2 else slice(None, None, -1)
    xs = np.concatenate([-x, x[tail]])
    ws = np.concatenate([w, w[tail]])
    if n % 2:
        xs[n // 2] = 0.0
    nodes = 0.5 * (xs + 1.0)
    weights = 0.5 * ws
    weights = weights / weights.sum()
    return QuadratureRule(nodes, weights)


def default_rule() -> QuadratureRule:
    return gauss_legendre_01(DEFAULT_ORDER)


def evaluate_at_nodes(g, nodes):
    """Evaluate ``g`` on an array of nodes, vectorized when g allows it."""
    # non-finite values are reported by the callers
    with np.errstate(all="ignore"):
        try:
            values = np.asarray(g(nodes), dtype=float)
        except (TypeError, ValueError):
            values = None
        if values is None or values.shape != nodes.shape:
            values = np.array([float(g(x)) for x in nodes])
    return values


def integrate_01(rule: QuadratureRule, g) -> float:
    """Approximate the integral of ``g`` over [0, 1] as sum(w_i * g(x_i))."""
    values = evaluate_at_nodes(g, rule.nodes)
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise QuadratureError(
            f"integrand is not finite at node {i} (gamma={rule.nodes[i]!r}): {values[i]!r}"
        )
    return float(np.dot(rule.weights, values))
