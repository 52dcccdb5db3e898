import numpy as np
import pytest
from oracles import cauchy_weighted, sqrt_weight_moment, weighted_pv

from inclusion_forge.quadrature import (
    cauchy_off,
    cheb_coeffs,
    cheb_nodes,
    gauss_cheb,
    singular_on,
)


def test_constant_integrates_to_pi():
    assert gauss_cheb(lambda x: np.ones_like(x), -1.0, 1.0, 8) == pytest.approx(
        np.pi, abs=1e-14
    )


def test_odd_density_vanishes():
    assert gauss_cheb(lambda x: x, -1.0, 1.0, 8) == pytest.approx(0.0, abs=1e-15)


def test_square_density():
    # integral x^2/sqrt(1-x^2) = pi/2 (double-factorial oracle)
    assert sqrt_weight_moment(2) == pytest.approx(np.pi / 2)
    assert gauss_cheb(lambda x: x**2, -1.0, 1.0, 8) == pytest.approx(
        np.pi / 2, abs=1e-14
    )


def test_exactness_for_high_degree_polynomials(rng):
    N = 8
    coeffs = rng.normal(size=2 * N)  # degree 2N-1
    exact = sum(c * sqrt_weight_moment(k) for k, c in enumerate(coeffs))
    val = gauss_cheb(np.polynomial.Polynomial(coeffs), -1.0, 1.0, N)
    assert val == pytest.approx(exact, rel=1e-13)


def test_mapped_interval_against_substitution():
    # x = delta_+ + delta_- y turns the weight into sqrt(1-y^2)
    y_form = gauss_cheb(lambda y: np.exp(0.75 + 0.25 * y), -1.0, 1.0, 32)
    assert gauss_cheb(np.exp, 0.5, 1.0, 32) == pytest.approx(y_form, rel=1e-14)


def test_coefficients_recover_polynomials():
    t2 = cheb_coeffs(lambda y: 2 * y**2 - 1, -1.0, 1.0, 16, 8)
    expected = np.zeros(9)
    expected[2] = 1.0
    np.testing.assert_allclose(t2.coef, expected, atol=1e-14)
    const = cheb_coeffs(lambda y: np.ones_like(y), -1.0, 1.0, 16, 8)
    assert const.coef[0] == pytest.approx(1.0, abs=1e-15)
    cubic = cheb_coeffs(lambda y: y**3, -1.0, 1.0, 16, 8)
    assert cubic.coef[1] == pytest.approx(0.75, abs=1e-14)
    assert cubic.coef[3] == pytest.approx(0.25, abs=1e-14)


def test_pv_of_first_kind_polynomials():
    s1 = cheb_coeffs(lambda y: y, -1.0, 1.0, 16, 8)
    for x in (-0.6, 0.0, 0.3, 0.9):
        assert singular_on(s1, x) == pytest.approx(np.pi, abs=1e-13)
    s0 = cheb_coeffs(lambda y: np.ones_like(y), -1.0, 1.0, 16, 8)
    assert singular_on(s0, 0.4) == pytest.approx(0.0, abs=1e-14)
    s2 = cheb_coeffs(lambda y: y**2, -1.0, 1.0, 16, 8)
    assert singular_on(s2, 0.5) == pytest.approx(np.pi / 2, abs=1e-13)


def test_pv_against_subtraction_oracle():
    # oracle accuracy is limited by QUADPACK roundoff near the pole
    a, b = 0.35, 1.0
    h = lambda t: np.cos(2.0 * t) + t
    series = cheb_coeffs(h, a, b, 64, 48)
    for xi in (0.5, 0.62, 0.9):
        assert singular_on(series, xi) == pytest.approx(
            weighted_pv(h, a, b, xi), abs=1e-8
        )


def test_cauchy_off_reference_values():
    s0 = cheb_coeffs(lambda y: np.ones_like(y), -1.0, 1.0, 16, 8)
    assert cauchy_off(s0, 2.0) == pytest.approx(-np.pi / np.sqrt(3.0), abs=1e-13)
    far = cauchy_off(s0, 1e6)
    assert far == pytest.approx(-np.pi / 1e6, rel=1e-5)
    # real targets beyond the interval give real values
    assert abs(cauchy_off(s0, 3.7).imag) == 0.0


def test_cauchy_off_against_quadrature_oracle():
    a, b = -1.0, -0.5
    h = lambda t: np.sin(t) + 2.0
    series = cheb_coeffs(h, a, b, 48, 40)
    for zeta in (0.3 + 0.4j, -2.0 + 0.0j, 1.5 - 2.2j):
        oracle = cauchy_weighted(h, a, b, zeta)
        assert cauchy_off(series, zeta) == pytest.approx(oracle, abs=1e-10)


def test_plemelj_jump_average():
    a, b = -1.0, 1.0
    h = lambda t: np.exp(t)
    series = cheb_coeffs(h, a, b, 64, 48)
    eps = 1e-5
    for x in (-0.4, 0.2, 0.7):
        avg = 0.5 * (cauchy_off(series, x + 1j * eps) + cauchy_off(series, x - 1j * eps))
        assert abs(avg - singular_on(series, x)) < 1e-3


def test_doubling_nodes_is_stable_for_analytic_densities():
    a, b = 0.2, 1.3
    h = lambda t: np.exp(np.sin(3.0 * t))
    v1 = gauss_cheb(h, a, b, 64)
    v2 = gauss_cheb(h, a, b, 128)
    assert abs(v1 - v2) < 1e-10
    s1 = cheb_coeffs(h, a, b, 64, 40)
    s2 = cheb_coeffs(h, a, b, 128, 40)
    assert abs(singular_on(s1, 0.8) - singular_on(s2, 0.8)) < 1e-10
    assert abs(cauchy_off(s1, 2.0 + 1j) - cauchy_off(s2, 2.0 + 1j)) < 1e-10


def test_truncation_indicator_reflects_resolution():
    h = lambda t: 1.0 / (1.06 - t)
    resolved = cheb_coeffs(h, -1.0, 1.0, 128, 96)
    coarse = cheb_coeffs(h, -1.0, 1.0, 128, 8)
    assert resolved.truncation_indicator < 1e-8
    assert coarse.truncation_indicator > 1e-3


def test_nodes_follow_published_pattern():
    N = 5
    nodes = cheb_nodes(-1.0, 1.0, N)
    j = np.arange(1, N + 1)
    np.testing.assert_allclose(nodes, np.cos((2 * j - 1) * np.pi / (2 * N)), atol=0)


def test_complex_densities_supported():
    h = lambda t: np.exp(1j * t)
    series = cheb_coeffs(h, -1.0, 1.0, 32, 24)
    val = cauchy_off(series, 2.0 + 1.0j)
    oracle = cauchy_weighted(h, -1.0, 1.0, 2.0 + 1.0j)
    assert val == pytest.approx(oracle, abs=1e-10)
