import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from possport.errors import DomainError
from possport.fuzzy import crisp, expected_value, nth_moment, possibilistic_expected_utility, power, triangular
from possport.randvar import DiscreteRandomVariable, expect, mean, mixed_expected_utility

F2 = power(2)
TWO_POINT = DiscreteRandomVariable((-0.1, 0.1), (0.5, 0.5))


def test_mean_examples():
    assert mean(DiscreteRandomVariable((2.5,), (1.0,))) == 2.5
    assert mean(TWO_POINT) == 0.0
    assert mean(DiscreteRandomVariable((0, 1, 2), (0.2, 0.5, 0.3))) == pytest.approx(1.1, abs=1e-15)


def test_expect_examples():
    Z = DiscreteRandomVariable((0, 1, 2), (0.2, 0.5, 0.3))
    assert expect(lambda z: z, Z) == mean(Z)
    assert expect(lambda z: z * z, TWO_POINT) == pytest.approx(0.01, abs=1e-17)
    assert expect(lambda z: 1.0, Z) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(DomainError, match="z=0.0"):
        expect(lambda z: 1.0 / z if z else float("inf"), Z)


def test_duplicates_merge():
    Z1 = DiscreteRandomVariable((1.0, 1.0, 3.0), (0.25, 0.25, 0.5))
    Z2 = DiscreteRandomVariable((1.0, 3.0), (0.5, 0.5))
    assert expect(np.exp, Z1) == pytest.approx(expect(np.exp, Z2), rel=1e-15)


@pytest.mark.parametrize("z, p", [((1.0,), (0.9,)), ((1.0, 2.0), (1.2, -0.2)), ((), ()), ((1.0,), (0.5, 0.5)),
                                  ((float("inf"),), (1.0,))])
def test_invalid_distributions(z, p):
    with pytest.raises(ValueError):
        DiscreteRandomVariable(z, p)


def test_mixed_examples():
    Z = DiscreteRandomVariable((-0.05, 0.02, 0.1), (0.3, 0.5, 0.2))
    u2 = lambda x, z: np.exp(x + 2 * z) - x * z**2
    # crisp A reduces to a plain expectation
    assert mixed_expected_utility(u2, crisp(0.4), Z, F2) == pytest.approx(expect(lambda z: u2(0.4, z), Z), abs=1e-14)
    A = triangular(0.05, 0.2, 0.3)
    assert mixed_expected_utility(lambda x, z: x * z, A, Z, F2) == pytest.approx(mean(Z) * expected_value(A, F2), abs=1e-15)
    assert mixed_expected_utility(lambda x, z: x**2 * z, A, Z, F2) == pytest.approx(
        mean(Z) * nth_moment(A, F2, 2), abs=1e-15)


def test_mixed_domain_error():
    with pytest.raises(DomainError, match="outcome"):
        mixed_expected_utility(lambda x, z: np.log(1 + x + z), triangular(0, 0.1, 0.1), DiscreteRandomVariable((-2.0,), (1.0,)), F2)


@settings(max_examples=60, deadline=None)
@given(st.floats(-1, 1), st.floats(0, 1), st.floats(0, 1), st.floats(-2, 2))
def test_constant_background_reduces_to_possibilistic(b, a, c, z0):
    A = triangular(b, a, c)
    u2 = lambda x, z: np.sin(x) * np.exp(z) + x * z
    lhs = mixed_expected_utility(u2, A, DiscreteRandomVariable.constant(z0), F2)
    rhs = possibilistic_expected_utility(lambda x: u2(x, z0), A, F2)
    assert abs(lhs - rhs) <= 1e-12


@settings(max_examples=60, deadline=None)
@given(st.floats(-1, 1), st.floats(0, 1), st.floats(0, 1), st.floats(-3, 3), st.floats(-3, 3),
       st.lists(st.floats(-1, 1), min_size=1, max_size=5), st.integers(0, 2**31))
def test_mixed_linearity(b, a, c, x, y, zs, seed):
    p = np.random.default_rng(seed).dirichlet(np.ones(len(zs)))
    p = p / p.sum()
    p[-1] = 1.0 - p[:-1].sum()
    Z = DiscreteRandomVariable(zs, np.clip(p, 0, None))
    A = triangular(b, a, c)
    g = lambda s, t: np.cos(s + t)
    h = lambda s, t: s**2 * t - t
    lhs = mixed_expected_utility(lambda s, t: x * g(s, t) + y * h(s, t), A, Z, F2)
    rhs = x * mixed_expected_utility(g, A, Z, F2) + y * mixed_expected_utility(h, A, Z, F2)
    assert abs(lhs - rhs) <= 1e-12
