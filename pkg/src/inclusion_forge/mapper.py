"""Boundary and interior values of the conformal map and its companion F.

The two boundary-value problems are solved on the two-sheeted surface of
u^2 = p(zeta); on the first sheet the solutions reduce to Cauchy-type
integrals over the slit tops with the 1/|q| weight.  Writing |q| as the
smooth factor r_j times the endpoint weight sqrt((eta-a)(b-eta)) turns every
density into a smooth function handled by the Chebyshev machinery in
:mod:`inclusion_forge.quadrature`:

* ``phi_j = (a_j - pole density)/r_j`` drives F and the auxiliary density
  g_1,
* ``(g_0 + rho'_j)/r_j`` drives the map itself,
* ``g_1 * w_j`` (the weight moved to the numerator) turns the unweighted
  Cauchy integrals of g_1 into first-kind-weight integrals of a smooth
  density.

Boundary values are assembled from the principal value plus explicit local
jump term, never from numerical limits, so both banks are exact at slit
endpoints (the bank-dependent terms carry |q| or g_1 and vanish there).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .branch import BranchData, abs_q, eval_q, weight_factor
from .model import (
    DegenerateEllipseError,
    DerivedConstants,
    EvaluationError,
    FreeParameters,
    Loading,
    MaterialSet,
    NumericsConfig,
    pole_density,
    singular_part_F,
    singular_part_omega,
)
from .quadrature import (
    ChebyshevSeries,
    cauchy_off,
    cheb_nodes,
    series_from_samples,
    singular_on,
)

if TYPE_CHECKING:  # pragma: no cover
    from .solvability import SolvabilityConstants


@dataclass(frozen=True)
class DensityTable:
    """Per-slit Chebyshev tables driving every evaluation.

    ``phi[j]`` expands the first-problem density over the smooth weight
    factor, ``g0_rho[j]`` the second-problem constant part, and
    ``g1_weighted[j]`` expands g_1 times the endpoint weight (so the |q|
    factor it carries, which vanishes at every slit endpoint, is handled
    in closed form).  ``a`` and ``rho_prime`` echo the constants baked in.
    """

    phi: tuple[ChebyshevSeries, ...]
    g0_rho: tuple[ChebyshevSeries, ...]
    g1_weighted: tuple[ChebyshevSeries, ...]
    a: tuple[float, ...]
    rho_prime: tuple[float, ...]


@dataclass(frozen=True)
class BoundaryValue:
    """One traced boundary sample: parameter, bank, and physical point."""

    xi: float
    slit_index: int
    bank: int
    z: complex


def g0(xi, j: int, derived: DerivedConstants):
    """Density constant term of the second problem on slit j.

    Re(e_j / (xi - zeta_inf)) for a finite pole preimage, c_star_j * xi for
    the preimage at infinity; e_j carries the per-inclusion modulus, so
    configurations with unequal stiffness ratios get per-slit densities.
    """
    x = np.asarray(xi, dtype=float)
    if derived.pole_at_infinity:
        out = derived.c_star[j] * x
    else:
        out = (derived.e[j] / (x - derived.zeta_inf)).real
    if np.isscalar(xi) or np.ndim(xi) == 0:
        return float(out)
    return out


class SlitMap:
    """Evaluator for one solved configuration (n >= 2 slits).

    Builds the per-slit Chebyshev density tables once; all evaluation
    methods are pure and accept scalars or arrays of targets.
    """

    def __init__(
        self,
        branch: BranchData,
        derived: DerivedConstants,
        constants: "SolvabilityConstants",
        numerics: NumericsConfig = NumericsConfig(),
    ) -> None:
        self.branch = branch
        self.derived = derived
        self.constants = constants
        self.numerics = numerics
        n = branch.n
        N, M = numerics.N, numerics.M

        phi_series: list[ChebyshevSeries] = []
        g0rho_series: list[ChebyshevSeries] = []
        nodes_per_slit: list[np.ndarray] = []
        for j in range(n):
            a, b = branch.slit(j)
            nodes = cheb_nodes(a, b, N)
            nodes_per_slit.append(nodes)
            r = weight_factor(branch, nodes, j)
            phi = constants.a[j] - pole_density(nodes, derived)
            phi_series.append(series_from_samples(phi / r, a, b, M))
            dens = g0(nodes, j, derived) + constants.rho_prime[j]
            g0rho_series.append(series_from_samples(dens / r, a, b, M))
        self._phi = tuple(phi_series)
        self._g0rho = tuple(g0rho_series)

        # g_1 needs the phi tables of every slit, so it is sampled second.
        g1w_series: list[ChebyshevSeries] = []
        for j in range(n):
            a, b = branch.slit(j)
            nodes = nodes_per_slit[j]
            vals = self._g1_values(nodes, j)
            w = np.sqrt((nodes - a) * (b - nodes))
            g1w_series.append(series_from_samples(vals * w, a, b, M))
        self._g1w = tuple(g1w_series)
        self.densities = DensityTable(
            self._phi, self._g0rho, self._g1w,
            tuple(constants.a), tuple(constants.rho_prime),
        )

    # -- densities ---------------------------------------------------------

    def phi(self, xi, m: int):
        """First-problem boundary density a_m - Im(singular term) on slit m."""
        return self.constants.a[m] - pole_density(xi, self.derived)

    def _cauchy_all(self, table, xi, m: int):
        """Alternating-sign Cauchy sum over slit tables at xi inside slit m."""
        total = 0.0 + 0.0j
        for j, series in enumerate(table):
            term = singular_on(series, xi) if j == m else cauchy_off(series, xi)
            total = total + (-1.0) ** j * term
        return total

    def _g1_values(self, xi, m: int):
        return (abs_q(self.branch, xi) / np.pi) * np.real(
            self._cauchy_all(self._phi, xi, m)
        )

    def _check_on_slit(self, x: np.ndarray, m: int) -> None:
        a, b = self.branch.slit(m)
        if np.any((x < a) | (x > b)):
            raise EvaluationError(f"xi outside closed slit {m} = [{a}, {b}]")

    def g1(self, xi, m: int):
        """Odd companion density carrying the |q| factor; 0 at endpoints."""
        x = np.asarray(xi, dtype=float)
        self._check_on_slit(x, m)
        out = self._g1_values(x, m)
        if np.isscalar(xi) or np.ndim(xi) == 0:
            return float(out)
        return out

    # -- the map -----------------------------------------------------------

    def omega_boundary(self, xi, bank: int, m: int):
        """Map value on bank +-1 of slit m, i.e. a point of contour m."""
        if bank not in (+1, -1):
            raise EvaluationError(f"bank must be +1 or -1, got {bank!r}")
        d = self.derived
        x = np.asarray(xi, dtype=float)
        self._check_on_slit(x, m)
        absq = abs_q(self.branch, x)
        sign_m = bank * (-1.0) ** m
        total = 0.0 + 0.0j
        for j in range(self.branch.n):
            if j == m:
                c_g1 = singular_on(self._g1w[m], x)
                c_g0 = singular_on(self._g0rho[m], x)
            else:
                c_g1 = cauchy_off(self._g1w[j], x)
                c_g0 = cauchy_off(self._g0rho[j], x)
            total = total + (-1.0) ** j * d.lam[j] * (c_g1 + sign_m * absq * c_g0)
        g0_loc = g0(x, m, d) + self.constants.rho_prime[m]
        g1_loc = self._g1_values(x, m)
        local = np.pi * 1j * d.lam[m] * (g0_loc + sign_m * g1_loc)
        # gamma is added last so a pure translation shifts points bit-exactly
        out = (
            singular_part_omega(x, d)
            - 1j / (np.pi * d.tau_bar) * (total + local)
            + d.gamma
        )
        if np.isscalar(xi) or np.ndim(xi) == 0:
            return complex(out)
        return out

    def boundary_value(self, xi: float, bank: int, m: int) -> BoundaryValue:
        """One boundary sample as a record with its parameter bookkeeping."""
        return BoundaryValue(float(xi), m, bank, self.omega_boundary(xi, bank, m))

    def omega_interior(self, zeta):
        """Map value off the slits (and away from the pole preimage)."""
        d = self.derived
        z = np.asarray(zeta, dtype=complex)
        out = singular_part_omega(z, d) + self._omega_regular(z)
        if np.isscalar(zeta) or np.ndim(zeta) == 0:
            return complex(out)
        return out

    def omega_regular(self, zeta):
        """Bounded remainder of the map after removing the singular term."""
        z = np.asarray(zeta, dtype=complex)
        out = self._omega_regular(z)
        if np.isscalar(zeta) or np.ndim(zeta) == 0:
            return complex(out)
        return out

    def _omega_regular(self, z: np.ndarray):
        d = self.derived
        n = self.branch.n
        q = eval_q(self.branch, z)
        pole_sign = (-1.0) ** n
        total = 0.0 + 0.0j
        for j in range(n):
            c_g1 = cauchy_off(self._g1w[j], z)
            c_g0 = cauchy_off(self._g0rho[j], z)
            total = total + (-1.0) ** j * d.lam[j] * (
                c_g1 + pole_sign * 1j * q * c_g0
            )
        return -1j / (np.pi * d.tau_bar) * total + d.gamma

    # -- the companion function F -------------------------------------------

    def F_boundary(self, xi, bank: int, m: int):
        """Boundary value of F; its imaginary part is exactly a_m."""
        if bank not in (+1, -1):
            raise EvaluationError(f"bank must be +1 or -1, got {bank!r}")
        d = self.derived
        x = np.asarray(xi, dtype=float)
        self._check_on_slit(x, m)
        out = (
            d.beta0
            + singular_part_F(x, d)
            + bank * (-1.0) ** m * self._g1_values(x, m)
            + 1j * self.phi(x, m)
        )
        if np.isscalar(xi) or np.ndim(xi) == 0:
            return complex(out)
        return out

    def F_interior(self, zeta):
        """F off the slits; bounded at infinity once the a_j are solved."""
        d = self.derived
        z = np.asarray(zeta, dtype=complex)
        q = eval_q(self.branch, z)
        total = self._cauchy_all_off(self._phi, z)
        sign = (-1.0) ** (self.branch.n - 1)
        out = d.beta0 + singular_part_F(z, d) - 1j * sign * q / np.pi * total
        if np.isscalar(zeta) or np.ndim(zeta) == 0:
            return complex(out)
        return out

    def _cauchy_all_off(self, table, z):
        total = 0.0 + 0.0j
        for j, series in enumerate(table):
            total = total + (-1.0) ** j * cauchy_off(series, z)
        return total

    # -- diagnostics ---------------------------------------------------------

    def truncation_indicators(self) -> dict[str, float]:
        """Worst tail-coefficient ratio of each density family."""
        return {
            "phi": max(s.truncation_indicator for s in self._phi),
            "g0_rho": max(s.truncation_indicator for s in self._g0rho),
            "g1_weighted": max(s.truncation_indicator for s in self._g1w),
        }


# -- single inclusion closed forms -------------------------------------------


def n1_shape_ratio(loading: Loading, materials: MaterialSet) -> complex:
    """Ellipse shape ratio delta of the circular-map representation."""
    if materials.n != 1:
        raise EvaluationError("shape ratio is defined for a single inclusion")
    k0 = materials.kappa[0]
    if k0 == 1.0:
        raise EvaluationError("kappa = 1 has no bounded construction")
    tau, tau_inf = loading.tau, loading.tau_inf
    if tau == 0:
        raise EvaluationError("interior stress must not vanish")
    return (2.0 * k0 * tau_inf - (k0 + 1.0) * tau) / ((1.0 - k0) * loading.tau_bar)


def _n1_axis_factors(loading: Loading, materials: MaterialSet) -> tuple[complex, complex]:
    lt = materials.lambda_tilde()[0]
    tau_bar = loading.tau_bar
    drive = lt * (loading.tau_inf - loading.tau)
    m1 = (drive - 1j * loading.tau2) / tau_bar
    m2 = (loading.tau1 - drive) / tau_bar
    return m1, m2


def n1_slit_profile(xi, bank: int, loading: Loading, materials: MaterialSet,
                    free: FreeParameters):
    """Boundary point of the single-inclusion slit map at xi in [-1, 1]."""
    delta = n1_shape_ratio(loading, materials)
    if abs(delta - 1.0) < 1e-12 or abs(delta + 1.0) < 1e-12:
        raise DegenerateEllipseError(
            f"shape ratio delta = {delta} collapses the profile to a segment"
        )
    m1, m2 = _n1_axis_factors(loading, materials)
    x = np.asarray(xi, dtype=float)
    out = free.c_m1 * (m1 * x + 1j * bank * m2 * np.sqrt(1.0 - x * x)) + free.gamma
    if np.isscalar(xi) or np.ndim(xi) == 0:
        return complex(out)
    return out


def n1_circular_profile(phi, loading: Loading, materials: MaterialSet,
                        free: FreeParameters):
    """Boundary point of the single-inclusion circular map at angle phi."""
    delta = n1_shape_ratio(loading, materials)
    if abs(delta - 1.0) < 1e-12 or abs(delta + 1.0) < 1e-12:
        raise DegenerateEllipseError(
            f"shape ratio delta = {delta} collapses the profile to a segment"
        )
    p = np.asarray(phi, dtype=float)
    unit = np.exp(1j * p)
    out = free.c_m1 * (unit + delta / unit) + free.gamma
    if np.isscalar(phi) or np.ndim(phi) == 0:
        return complex(out)
    return out
