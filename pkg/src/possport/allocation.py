"""Optimal allocation in the possibilistic portfolio model.

An agent with future riskless wealth ``w`` puts ``alpha`` into an asset
whose excess return ``B`` is a fuzzy number.  Total utility is

    V(alpha) = E_f[u(w + alpha B)]                       (standard model)
    W(alpha) = E_f[u(w + alpha B + Z)]                   (background risk Z)

Both are concave in alpha.  The optimum is found exactly by root finding
on the first-order condition, and approximately by a second-order Taylor
expansion in the risk premium ``k = E_f(B)``:

    alpha(k) ~ E_f(B) / (r Var_f(B))
               + 1/2 (P / r^2) m3 / Var_f(B)^3 E_f(B)^2

with ``r``, ``P`` the Arrow-Pratt and prudence indices at ``w`` and ``m3``
the third central moment of ``B``.  Note the cube of the variance in the
skew term.  With background risk, ``1/r`` is replaced by ``1/r - M(Z)`` and
the skew term gains the factor ``1 / (1 - M(Z) P)``.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Tuple

import numpy as np
from scipy import optimize

from .errors import BoundarySolutionError, ConvergenceError, DomainError, SingularError
from .fuzzy import FuzzyNumber, WeightingFunction, central_moment, expected_value, possibilistic_expected_utility
from .quadrature import QuadratureRule, default_rule
from .randvar import DiscreteRandomVariable, mean, mixed_expected_utility
from .utility import UtilityFunction, arrow_pratt, prudence

SOLVER_TOL = 1e-10
ALPHA_XTOL = 1e-12
DOMAIN_MARGIN = 1e-9
CENTER_TOL = 1e-10
_EXPAND_LIMIT = 1e15
_POLE_TOL = 1e-12


def decompose_excess_return(B: FuzzyNumber, f: WeightingFunction, rule=None):
    """Split ``B = k * mu + A`` with ``mu = 1``, ``k = E_f(B)`` and ``E_f(A) = 0``.

    A negative risk premium is rejected: the expansion is around
    ``alpha(0) = 0`` for ``k >= 0``.
    """
    ef_b = expected_value(B, f, rule)
    if ef_b < -CENTER_TOL:
        raise ValueError(f"negative risk premium E_f(B) = {ef_b!r}; only k >= 0 is supported")
    k = max(ef_b, 0.0)
    A = B.shift(-ef_b)
    return k, 1.0, A


class _ModelBase:
    """Shared set-up: decomposition, cached moments and the feasible set."""

    def _setup(self):
        if self.rule is None:
            object.__setattr__(self, "rule", default_rule())
        object.__setattr__(self, "w", float(self.w))
        k, mu, A = decompose_excess_return(self.B, self.f, self.rule)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "ef_b", expected_value(self.B, self.f, self.rule))
        object.__setattr__(self, "var_b", central_moment(self.B, self.f, 2, self.rule))
        object.__setattr__(self, "m3_b", central_moment(self.B, self.f, 3, self.rule))
        for z in self._shocks():
            if not self.u.in_domain(self.w + z):
                raise DomainError(f"wealth w + z = {self.w + z!r} lies outside the utility domain {self.u.domain}")

    def _shocks(self):
        return (0.0,)

    def feasible_interval(self) -> Tuple[float, float]:
        """Open interval of alpha keeping every wealth outcome inside the utility domain."""
        lo_u, hi_u = self.u.domain
        x_lo, x_hi = self.B.support
        lo, hi = -math.inf, math.inf
        for z in set(self._shocks()):
            base = self.w + z
            for x in (x_lo, x_hi):
                if x == 0.0:
                    continue
                # base + alpha x in (lo_u, hi_u)
                a, b = (lo_u - base) / x, (hi_u - base) / x
                if x < 0.0:
                    a, b = b, a
                lo, hi = max(lo, a), min(hi, b)
        return lo, hi

    def _require_feasible(self, alpha):
        lo, hi = self.feasible_interval()
        if not lo < alpha < hi:
            raise DomainError(
                f"allocation {alpha!r} leaves the utility domain; feasible interval is ({lo!r}, {hi!r})",
                interval=(lo, hi),
            )

    @property
    def r_u(self) -> float:
        return arrow_pratt(self.u, self.w)

    @property
    def p_u(self) -> float:
        return prudence(self.u, self.w)


@dataclass(frozen=True)
class StandardModel(_ModelBase):
    """Riskless wealth ``w``, fuzzy excess return ``B``, weighting ``f``, utility ``u``.

    After construction ``k``, ``mu`` and the centered part ``A`` are
    available along with the moments ``ef_b``, ``var_b`` and ``m3_b``.
    """

    w: float
    B: FuzzyNumber
    f: WeightingFunction
    u: UtilityFunction
    rule: Optional[QuadratureRule] = field(default=None, compare=False)

    def __post_init__(self):
        self._setup()

    def with_premium(self, k: float) -> "StandardModel":
        """Same centered risk ``A`` with excess return ``B = k + A``."""
        return dataclasses.replace(self, B=self.A.shift(k))


@dataclass(frozen=True)
class MixedModel(_ModelBase):
    """The standard model plus an additive background risk ``Z``."""

    w: float
    B: FuzzyNumber
    f: WeightingFunction
    u: UtilityFunction
    Z: DiscreteRandomVariable
    rule: Optional[QuadratureRule] = field(default=None, compare=False)

    def __post_init__(self):
        self._setup()
        object.__setattr__(self, "mz", mean(self.Z))

    def _shocks(self):
        return self.Z.outcomes

    def with_premium(self, k: float) -> "MixedModel":
        return dataclasses.replace(self, B=self.A.shift(k))

    def standard(self) -> StandardModel:
        return StandardModel(self.w, self.B, self.f, self.u, self.rule)


# ---------------------------------------------------------------------------
# total utility and first-order conditions
# ---------------------------------------------------------------------------


def total_utility_V(m: StandardModel, alpha: float) -> float:
    """V(alpha) = E_f[u(w + alpha B)]."""
    m._require_feasible(alpha)
    return possibilistic_expected_utility(lambda x: m.u(m.w + alpha * x), m.B, m.f, m.rule)


def marginal_utility_Vprime(m: StandardModel, alpha: float) -> float:
    """V'(alpha) = E_f[B u'(w + alpha B)]."""
    m._require_feasible(alpha)
    return possibilistic_expected_utility(lambda x: x * m.u.prime(m.w + alpha * x), m.B, m.f, m.rule)


def total_utility_W(m: MixedModel, alpha: float) -> float:
    """W(alpha) = E_f[u(w + alpha B + Z)]."""
    m._require_feasible(alpha)
    return mixed_expected_utility(lambda x, z: m.u(m.w + alpha * x + z), m.B, m.Z, m.f, m.rule)


def marginal_utility_Wprime(m: MixedModel, alpha: float) -> float:
    """W'(alpha) = E_f[B u'(w + alpha B + Z)]."""
    m._require_feasible(alpha)
    return mixed_expected_utility(lambda x, z: x * m.u.prime(m.w + alpha * x + z), m.B, m.Z, m.f, m.rule)


class SolverResult(NamedTuple):
    root: float
    iterations: int
    bracket: Tuple[float, float]
    residual: float


def _solve_foc(deriv, interval, tol):
    if not tol > 0.0:
        raise ValueError(f"solver tolerance must be positive, got {tol!r}")
    g0 = deriv(0.0)
    if g0 <= tol:
        # zero premium: alpha = 0 satisfies the condition (g0 >= 0 up to roundoff)
        return SolverResult(0.0, 0, (0.0, 0.0), abs(g0))
    upper = interval[1]
    if math.isfinite(upper):
        hi = upper * (1.0 - DOMAIN_MARGIN)
        if deriv(hi) > 0.0:
            raise BoundarySolutionError(
                f"marginal utility stays positive up to the domain limit alpha = {upper!r}; "
                "no interior optimum", upper=upper)
    else:
        hi = 1.0
        while deriv(hi) >= 0.0:
            hi *= 2.0
            if hi > _EXPAND_LIMIT:
                raise BoundarySolutionError(
                    "marginal utility stays positive for every allocation; no interior optimum",
                    upper=math.inf)
    root, info = optimize.brentq(deriv, 0.0, hi, xtol=ALPHA_XTOL, rtol=4 * np.finfo(float).eps,
                                 maxiter=500, full_output=True, disp=False)
    residual = abs(deriv(root))
    if not info.converged or residual > tol:
        raise ConvergenceError(f"root finder stopped at alpha = {root!r} with |derivative| = {residual!r}")
    return SolverResult(float(root), info.iterations, (0.0, hi), residual)


def solve_exact_standard(m: StandardModel, tol: float = SOLVER_TOL, full_output: bool = False):
    """Root of V' on the feasible interval (unique since V is concave)."""
    res = _solve_foc(lambda a: marginal_utility_Vprime(m, a), m.feasible_interval(), tol)
    return res if full_output else res.root


def solve_exact_mixed(m: MixedModel, tol: float = SOLVER_TOL, full_output: bool = False):
    """Root of W' on the feasible interval (unique since W is concave)."""
    res = _solve_foc(lambda a: marginal_utility_Wprime(m, a), m.feasible_interval(), tol)
    return res if full_output else res.root


# ---------------------------------------------------------------------------
# Taylor approximations
# ---------------------------------------------------------------------------


class Approximation(NamedTuple):
    value: float
    first_term: float
    second_term: float


def _variance(m):
    if m.var_b <= 0.0:
        raise SingularError("excess return has zero possibilistic variance; the approximation is singular")
    return m.var_b


def approx_alpha_prime0(m: StandardModel) -> float:
    """alpha'(0) = mu / (E_f(A^2) r_u(w))."""
    return m.mu / (_variance(m) * m.r_u)


def approx_alpha_second0(m: StandardModel) -> float:
    """alpha''(0) = P_u / r_u^2 * E_f(A^3) / E_f(A^2)^3 * mu^2."""
    var = _variance(m)
    r = m.r_u
    return m.p_u / r**2 * m.m3_b / var**3 * m.mu**2


def approx_standard(m: StandardModel) -> Approximation:
    """Second-order approximation of the optimal allocation."""
    var = _variance(m)
    r, p = m.r_u, m.p_u
    first = m.ef_b / (r * var)
    second = 0.5 * (p / r**2) * m.m3_b / var**3 * m.ef_b**2
    return Approximation(first + second, first, second)


def _pole(m):
    den = 1.0 - m.mz * m.p_u
    if abs(den) <= _POLE_TOL:
        raise SingularError(f"1 - M(Z) P_u(w) = {den!r}: the background-risk formula has a pole here")
    return den


def approx_beta_prime0(m: MixedModel) -> float:
    """beta'(0) = mu / E_f(A^2) * (1/r_u(w) - M(Z))."""
    return m.mu / _variance(m) * (1.0 / m.r_u - m.mz)


def approx_beta_second0(m: MixedModel) -> float:
    """beta''(0) = P_u beta'(0)^2 / Var_f(B) * m3 / (1 - M(Z) P_u)."""
    den = _pole(m)
    b1 = approx_beta_prime0(m)
    return m.p_u * b1**2 / _variance(m) * m.m3_b / den


def approx_mixed(m: MixedModel) -> Approximation:
    """Second-order approximation of the optimal allocation under background risk."""
    var = _variance(m)
    den = _pole(m)
    p = m.p_u
    gap = 1.0 / m.r_u - m.mz
    first = m.ef_b / var * gap
    second = 0.5 * p * gap**2 * m.ef_b**2 * m.m3_b / (var**3 * den)
    return Approximation(first + second, first, second)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AllocationReport:
    """Exact and approximate allocations side by side."""

    alpha_exact: float
    alpha_approx: float
    first_order_term: float
    second_order_term: float
    ef_b: float
    var_b: float
    m3_b: float
    mz: Optional[float]
    r_u: float
    p_u: float
    abs_error: float
    rel_error: float
    iterations: int
    bracket: Tuple[float, float]
    residual: float

    @property
    def moments_used(self):
        return self.ef_b, self.var_b, self.m3_b, self.mz

    @property
    def indices_used(self):
        return self.r_u, self.p_u


def allocate(m, tol: float = SOLVER_TOL) -> AllocationReport:
    """Solve ``m`` exactly and approximately and compare the two."""
    if isinstance(m, MixedModel):
        res = solve_exact_mixed(m, tol, full_output=True)
        approx = approx_mixed(m)
        mz = m.mz
    else:
        res = solve_exact_standard(m, tol, full_output=True)
        approx = approx_standard(m)
        mz = None
    abs_err = abs(res.root - approx.value)
    if res.root != 0.0:
        rel_err = abs_err / abs(res.root)
    else:
        rel_err = 0.0 if abs_err == 0.0 else math.inf
    return AllocationReport(
        alpha_exact=res.root,
        alpha_approx=approx.value,
        first_order_term=approx.first_term,
        second_order_term=approx.second_term,
        ef_b=m.ef_b,
        var_b=m.var_b,
        m3_b=m.m3_b,
        mz=mz,
        r_u=m.r_u,
        p_u=m.p_u,
        abs_error=abs_err,
        rel_error=rel_err,
        iterations=res.iterations,
        bracket=res.bracket,
        residual=res.residual,
    )
