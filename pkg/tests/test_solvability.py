import numpy as np
import pytest
from conftest import load_figure_inputs
from oracles import smooth_weight, weighted_integral

from inclusion_forge.branch import BranchData
from inclusion_forge.model import (
    AT_INFINITY,
    FreeParameters,
    Loading,
    MaterialSet,
    NumericsConfig,
    SlitConfiguration,
    derive_constants,
    pole_density,
)
from inclusion_forge.solvability import (
    antisymmetric_free_values,
    boundedness_residuals,
    build_constants,
    is_symmetric_pair,
    n2_closed_form_a,
    n2_closed_form_rho,
    n2_symmetric_a,
    n2_symmetric_rho,
    n3_closed_form_a,
    n3_closed_form_rho,
    period_matrix,
    solve_a,
    solve_rho,
    system_matrix,
    weighted_moment,
)

NUM = NumericsConfig()


def figure_problem(name):
    cfg, loading, materials, free, numerics, _ = load_figure_inputs(name)
    derived = derive_constants(loading, materials, cfg, free)
    branch = BranchData(cfg.endpoints)
    return cfg, derived, branch, numerics


def test_period_entries_against_weighted_quadrature_oracle():
    _, _, branch, numerics = figure_problem("fig1b")
    period = period_matrix(branch, numerics)
    for j in range(2):
        a, b = branch.slit(j)
        for m in (1, 2):
            oracle = weighted_integral(
                lambda x, j=j, m=m: x ** (m - 1) / smooth_weight(branch.endpoints, j, x), a, b
            )
            assert period.entry(m, j) == pytest.approx(oracle, abs=1e-8)


def test_period_symmetric_pair_has_equal_first_moments():
    _, _, branch, numerics = figure_problem("fig2b")
    period = period_matrix(branch, numerics)
    assert period.entry(1, 0) == pytest.approx(period.entry(1, 1), rel=1e-13)


def test_period_middle_slit_odd_moment_vanishes():
    _, _, branch, numerics = figure_problem("fig4a")
    period = period_matrix(branch, numerics)
    assert period.entry(2, 1) == pytest.approx(0.0, abs=1e-14)
    assert np.all(period.I[0] > 0)


@pytest.mark.parametrize("name", ["fig1b", "fig3a", "fig4a"])
def test_alternating_row_sums_vanish(name):
    # contour integral of xi^(m-1)/q over a large circle is zero for
    # m <= n-1, which forces sum_j (-1)^j I_mj = 0
    _, _, branch, numerics = figure_problem(name)
    period = period_matrix(branch, numerics)
    n = branch.n
    for m in range(1, n):
        alt = sum((-1.0) ** j * period.entry(m, j) for j in range(n))
        assert abs(alt) < 1e-10 * period.entry(m, n - 1 if n > 1 else 0)


def test_system_matrix_is_nonsingular_on_figures():
    for name in ("fig1b", "fig3a", "fig4a"):
        _, _, branch, numerics = figure_problem(name)
        det = np.linalg.det(system_matrix(period_matrix(branch, numerics)))
        assert det != 0.0


def test_symmetric_real_pole_strength_gives_zero_a():
    cfg, derived, branch, numerics = figure_problem("fig2b")
    assert derived.c_double_prime == 0.0
    period = period_matrix(branch, numerics)
    a = solve_a(period, branch, derived, 0.0, numerics)
    np.testing.assert_allclose(a, 0.0, atol=1e-15)


def test_imaginary_scaling_reproduces_published_antisymmetric_a():
    # loading with (tau_inf_bar - tau_bar)/mu = 1 so c = c_m1 = i and the
    # published coefficient (printed as Im c_m1) agrees with Im c
    loading = Loading(1.0, 0.0, 2.0, 0.0)
    cfg = SlitConfiguration([(-1.0, -0.5), (0.5, 1.0)], 0.0)
    materials = MaterialSet([5.0, 5.0])
    derived = derive_constants(loading, materials, cfg, FreeParameters(c_m1=1j))
    assert derived.c == pytest.approx(1j)
    branch = BranchData(cfg.endpoints)
    period = period_matrix(branch, NUM)
    expected_a1 = weighted_moment(
        branch, 1, lambda x: 1.0 / x, 0, NUM.N
    ) / period.entry(1, 1)
    sym = n2_symmetric_a(period, branch, derived, NUM)
    assert sym[1] == pytest.approx(expected_a1, rel=1e-13)
    assert sym[0] == pytest.approx(-expected_a1, rel=1e-13)
    # the general path with the antisymmetric free value agrees
    a0, _ = antisymmetric_free_values(period, branch, derived, NUM)
    a = solve_a(period, branch, derived, a0, NUM)
    np.testing.assert_allclose(a, sym, atol=1e-12)


def test_zero_drive_gives_zero_rho():
    # c_m1 = i makes every e_j pure imaginary for real loading, so c_* = 0
    loading = Loading(1.0, 0.0, -1.0, 0.0)
    cfg = SlitConfiguration([(-1.0, -0.5), (0.5, 1.0)], 0.0)
    materials = MaterialSet([5.0, 5.0])
    derived = derive_constants(loading, materials, cfg, FreeParameters(c_m1=1j))
    np.testing.assert_allclose(derived.c_star, 0.0, atol=1e-16)
    branch = BranchData(cfg.endpoints)
    period = period_matrix(branch, NUM)
    rho = solve_rho(period, branch, derived, 0.0, NUM)
    np.testing.assert_allclose(rho, 0.0, atol=1e-14)


def test_fig2c_rho_matches_published_closed_form():
    cfg, derived, branch, numerics = figure_problem("fig2c")
    period = period_matrix(branch, numerics)
    _, rho0 = antisymmetric_free_values(period, branch, derived, numerics)
    rho = solve_rho(period, branch, derived, rho0, numerics)
    sym = n2_symmetric_rho(period, branch, derived, numerics)
    np.testing.assert_allclose(rho, sym, atol=1e-12)
    # direct quadrature of the printed expression
    lam0 = derived.lam[0]
    expected = (
        -lam0
        * derived.c_star[0]
        * weighted_integral(
            lambda x: 1.0 / (x * smooth_weight(branch.endpoints, 1, x)), *branch.slit(1)
        )
        / weighted_integral(
            lambda x: 1.0 / smooth_weight(branch.endpoints, 1, x), *branch.slit(1)
        )
    )
    assert rho[1] == pytest.approx(expected, rel=1e-9)


def test_fig3a_conditions_hold_under_independent_quadrature():
    cfg, derived, branch, numerics = figure_problem("fig3a")
    period = period_matrix(branch, numerics)
    a = solve_a(period, branch, derived, 0.0, numerics)
    for m in (1, 2):
        total = 0.0
        for j in range(3):
            aj, bj = branch.slit(j)
            total += (-1.0) ** j * weighted_integral(
                lambda x, j=j: (a[j] - pole_density(x, derived))
                * x ** (m - 1)
                / smooth_weight(branch.endpoints, j, x),
                aj,
                bj,
            )
        assert abs(total) < 1e-8


def test_fig4a_antisymmetric_constants():
    cfg, derived, branch, numerics = figure_problem("fig4a")
    period = period_matrix(branch, numerics)
    a0, rho0 = antisymmetric_free_values(period, branch, derived, numerics)
    a = solve_a(period, branch, derived, a0, numerics)
    rho = solve_rho(period, branch, derived, rho0, numerics)
    assert a[0] == pytest.approx(-a[2], abs=1e-12)
    assert rho[0] == pytest.approx(-rho[2], abs=1e-8)
    assert rho[1] == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("name", ["fig1b", "fig1c", "fig2a"])
def test_two_slit_closed_forms_match_general_path(name):
    cfg, derived, branch, numerics = figure_problem(name)
    assert is_symmetric_pair(branch)
    period = period_matrix(branch, numerics)
    a = solve_a(period, branch, derived, 0.0, numerics)
    rho = solve_rho(period, branch, derived, 0.0, numerics)
    np.testing.assert_allclose(
        a, n2_closed_form_a(period, branch, derived, 0.0, numerics), atol=1e-10
    )
    np.testing.assert_allclose(
        rho, n2_closed_form_rho(period, branch, derived, 0.0, numerics), atol=1e-10
    )


@pytest.mark.parametrize("name", ["fig3a", "fig3c", "fig4a", "fig4c"])
def test_three_slit_closed_forms_match_general_path(name):
    cfg, derived, branch, numerics = figure_problem(name)
    period = period_matrix(branch, numerics)
    a = solve_a(period, branch, derived, 0.2, numerics)
    rho = solve_rho(period, branch, derived, -0.3, numerics)
    np.testing.assert_allclose(
        a, n3_closed_form_a(period, branch, derived, 0.2, numerics), atol=1e-10
    )
    np.testing.assert_allclose(
        rho, n3_closed_form_rho(period, branch, derived, -0.3, numerics), atol=1e-10
    )


def test_boundedness_residuals_flag_overrides():
    cfg, derived, branch, numerics = figure_problem("fig2c")
    period = period_matrix(branch, numerics)
    _, rho0 = antisymmetric_free_values(period, branch, derived, numerics)
    a = solve_a(period, branch, derived, 0.0, numerics)
    rho = solve_rho(period, branch, derived, rho0, numerics)
    good = boundedness_residuals(
        branch, derived, build_constants(a, rho, derived), numerics
    )
    assert max(good["a_relative"], good["rho_relative"]) < 1e-12
    bad = boundedness_residuals(
        branch, derived, build_constants(a, np.zeros_like(rho), derived), numerics
    )
    assert bad["rho_relative"] > 1e-2


def test_mirrored_configuration_gives_antisymmetric_vectors():
    # four symmetric slits, equal kappa, pole at the origin
    cfg = SlitConfiguration(
        [(-1.0, -0.7), (-0.5, -0.2), (0.2, 0.5), (0.7, 1.0)], 0.0 + 0.0j
    )
    loading = Loading(1.0, 0.5, -0.5, 1.5)
    materials = MaterialSet([3.0] * 4)
    derived = derive_constants(loading, materials, cfg, FreeParameters(c_m1=0.7 + 0.2j))
    branch = BranchData(cfg.endpoints)
    period = period_matrix(branch, NUM)
    a0, rho0 = antisymmetric_free_values(period, branch, derived, NUM)
    a = solve_a(period, branch, derived, a0, NUM)
    rho = solve_rho(period, branch, derived, rho0, NUM)
    np.testing.assert_allclose(a, -a[::-1], atol=1e-10)
    np.testing.assert_allclose(rho, -rho[::-1], atol=1e-10)


def test_general_path_handles_four_slits():
    cfg = SlitConfiguration(
        [(-1.0, -0.7), (-0.5, -0.2), (0.0, 0.3), (0.5, 1.0)], 0.4 + 1.1j
    )
    loading = Loading(1.0, 1.0, -1.0, 1.0)
    materials = MaterialSet([5.0, 0.5, 2.0, 0.2])
    derived = derive_constants(loading, materials, cfg, FreeParameters())
    branch = BranchData(cfg.endpoints)
    period = period_matrix(branch, NUM)
    a = solve_a(period, branch, derived, 0.0, NUM)
    rho = solve_rho(period, branch, derived, 0.0, NUM)
    res = boundedness_residuals(
        branch, derived, build_constants(a, rho, derived), NUM
    )
    assert max(res["a_relative"], res["rho_relative"]) < 1e-12
