"""Possibilistic portfolio choice with fuzzy-number returns.

Submodules: ``quadrature`` (Gauss-Legendre on [0, 1]), ``fuzzy`` (level-set
fuzzy numbers and possibilistic moments), ``utility`` (HARA/CRRA/CARA and
risk indices), ``randvar`` (discrete background risk, mixed expected
utility), ``allocation`` (models, exact solver, Taylor approximations) and
``cli``.
"""

from .errors import (BoundarySolutionError, ConfigError, ConvergenceError, DomainError, PossportError,
                     QuadratureError, SingularError)
from .quadrature import QuadratureRule, gauss_legendre_01, integrate_01
from .fuzzy import (Crisp, FuzzyNumber, Shifted, Trapezoidal, Triangular, WeightingFunction, central_moment,
                    crisp, expected_value, nth_moment, possibilistic_expected_utility, power, trapezoidal,
                    triangular, triangular_closed_moments, variance)
from .utility import UtilityFunction, arrow_pratt, cara, crra, hara, hara_indices, prudence
from .randvar import DiscreteRandomVariable, expect, mean, mixed_expected_utility
from .allocation import (AllocationReport, Approximation, MixedModel, StandardModel, allocate,
                         approx_alpha_prime0, approx_alpha_second0, approx_beta_prime0, approx_beta_second0,
                         approx_mixed, approx_standard, decompose_excess_return, marginal_utility_Vprime,
                         marginal_utility_Wprime, solve_exact_mixed, solve_exact_standard, total_utility_V,
                         total_utility_W)

__version__ = "0.1.0"
