import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from possport.errors import DomainError, SingularError
from possport.utility import (arrow_pratt, cara, check_derivatives, crra, custom, hara, hara_indices, prudence,
                              sample_domain)


def fd_index(u, w, h=1e-4):
    """Risk indices from central differences of u alone (independent oracle)."""
    f = lambda x: float(u(x))
    d1 = (f(w + h) - f(w - h)) / (2 * h)
    d2 = (f(w + h) - 2 * f(w) + f(w - h)) / h**2
    d3 = (f(w + 2 * h) - 2 * f(w + h) + 2 * f(w - h) - f(w - 2 * h)) / (2 * h**3)
    return -d2 / d1, -d3 / d2


def fd_index_from_prime(u, w, h=1e-4):
    """Indices with derivatives differenced from u' (better conditioned)."""
    g = lambda x: float(u.prime(x))
    d1 = g(w)
    d2 = (g(w + h) - g(w - h)) / (2 * h)
    d3 = (g(w + h) - 2 * g(w) + g(w - h)) / h**2
    return -d2 / d1, -d3 / d2


def test_cara_indices_constant():
    u = cara(1.7)
    for w in (-3.0, 0.0, 2.5):
        assert arrow_pratt(u, w) == pytest.approx(1.7, rel=1e-14)
        assert prudence(u, w) == pytest.approx(1.7, rel=1e-14)


def test_hara_examples():
    u = hara(-1.0, 0.0, 2.0)
    assert arrow_pratt(u, 1.0) == pytest.approx(2.0, rel=1e-14)
    assert prudence(u, 1.0) == pytest.approx(3.0, rel=1e-14)
    r, p = fd_index(u, 1.0, h=1e-3)
    assert r == pytest.approx(2.0, rel=1e-5)
    assert p == pytest.approx(3.0, rel=1e-4)


def test_crra_examples():
    u = crra(3.0)
    assert arrow_pratt(u, 2.0) == pytest.approx(1.5, rel=1e-14)
    assert prudence(u, 2.0) == pytest.approx(2.0, rel=1e-14)
    r, p = fd_index_from_prime(u, 2.0)
    assert r == pytest.approx(1.5, rel=1e-6)
    assert p == pytest.approx(2.0, rel=1e-6)


def test_hara_indices_examples():
    assert hara_indices(0.0, 2.0, 1.0) == pytest.approx((0.5, 0.75), rel=1e-15)
    assert hara_indices(1.0, 1.0, 0.0) == pytest.approx((1.0, 2.0), rel=1e-15)
    eta, gamma, w = 0.5, 3.0, 2.0
    inv_r, p_over_r2 = hara_indices(eta, gamma, w)
    u = hara(-1.0, eta, gamma)
    r = arrow_pratt(u, w)
    assert inv_r * r == pytest.approx(1.0, rel=1e-14)
    assert p_over_r2 * r**2 == pytest.approx(prudence(u, w), rel=1e-14)
    with pytest.raises(DomainError):
        hara_indices(0.0, 2.0, -1.0)


@settings(max_examples=80, deadline=None)
@given(st.floats(-1.0, 2.0), st.floats(0.2, 8.0), st.floats(0.05, 5.0))
def test_hara_closed_form_indices(eta, gamma, x):
    # x = eta + w / gamma > 0 parameterizes the admissible wealth
    w = (x - eta) * gamma
    zeta = -1.0 if gamma > 1 else 1.0
    if gamma == 1.0:
        zeta = 1.0
    u = hara(zeta, eta, gamma)
    assert arrow_pratt(u, w) == pytest.approx(1.0 / x, rel=1e-10)
    assert prudence(u, w) == pytest.approx((gamma + 1) / gamma / x, rel=1e-10)
    assert arrow_pratt(u, w) > 0 and prudence(u, w) > 0


@pytest.mark.parametrize("u", [hara(-1, 0, 2), hara(1, 0.3, 0.5), hara(2.0, 1.0, 1.0), hara(-1, 2.0, -1.0),
                               hara(-3, 1.0, -2.0), crra(0.5), crra(1.0), crra(4.0), cara(0.3), cara(5.0)])
def test_closed_form_derivatives_match_fd(u):
    check_derivatives(u)
    w = sample_domain(u.domain, 100)
    assert np.all(u.prime(w) > 0) and np.all(u.second(w) <= 0)


def test_hara_log_limit():
    u = hara(2.0, 1.0, 1.0)
    assert float(u(0.5)) == pytest.approx(2.0 * math.log(1.5))
    assert arrow_pratt(u, 0.5) == pytest.approx(1 / 1.5)


def test_hara_negative_gamma_domain_is_upper_bounded():
    u = hara(-1.0, 2.0, -1.0)  # quadratic utility, satiation at w = 2
    assert u.domain == (-math.inf, 2.0)
    assert prudence(u, 1.0) == 0.0
    with pytest.raises(DomainError):
        arrow_pratt(u, 2.5)


@pytest.mark.parametrize("args", [(1.0, 0.0, 2.0), (-1.0, 0.0, 0.5), (0.0, 0.0, 2.0), (-1.0, 0.0, 1.0),
                                  (1.0, 0.0, 0.0)])
def test_hara_rejects_decreasing(args):
    with pytest.raises(ValueError):
        hara(*args)


def test_domain_errors():
    with pytest.raises(DomainError):
        arrow_pratt(hara(-1, 0, 2), -0.1)
    with pytest.raises(DomainError):
        prudence(crra(2.0), 0.0)


def test_prudence_singular_for_linear_utility():
    u = custom(lambda w: w, lambda w: np.ones_like(np.asarray(w, float)), lambda w: np.zeros_like(np.asarray(w, float)),
               lambda w: np.zeros_like(np.asarray(w, float)))
    assert arrow_pratt(u, 0.3) == 0.0
    with pytest.raises(SingularError):
        prudence(u, 0.3)


def test_custom_checks_derivatives():
    ok = custom(lambda w: -np.exp(-w), lambda w: np.exp(-w), lambda w: -np.exp(-w), lambda w: np.exp(-w))
    assert arrow_pratt(ok, 0.0) == pytest.approx(1.0)
    with pytest.raises(ValueError, match="u'''"):
        custom(lambda w: -np.exp(-w), lambda w: np.exp(-w), lambda w: -np.exp(-w), lambda w: 2 * np.exp(-w))
    with pytest.raises(ValueError, match="concave"):
        custom(lambda w: np.exp(w), lambda w: np.exp(w), lambda w: np.exp(w), lambda w: np.exp(w))


def test_scaled_utility_keeps_indices():
    u = hara(-1, 0, 2)
    v = u.scaled(7.5)
    assert float(v(1.3)) == pytest.approx(7.5 * float(u(1.3)))
    assert arrow_pratt(v, 1.3) == pytest.approx(arrow_pratt(u, 1.3), rel=1e-15)
    assert prudence(v, 1.3) == pytest.approx(prudence(u, 1.3), rel=1e-15)
    assert v != u and u == hara(-1, 0, 2)
