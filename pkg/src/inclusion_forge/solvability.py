"""Period integrals and the linear systems fixing the constants a_j, rho_j.

Boundedness of the two surface solutions at the pair of infinite points
forces n-1 moment conditions each.  Rewritten over the slit tops with the
bank signs of q, both become small sign-alternating linear systems driven by
the period integrals

    I_mj = integral over slit j of  xi^(m-1) / |q(xi)| d xi  > 0.

The general solver covers any n >= 2; the two- and three-slit closed forms
are kept alongside as printed and cross-checked against it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .branch import BranchData, weight_factor
from .mapper import g0
from .model import DerivedConstants, NumericsConfig, SolverError, pole_density
from .quadrature import cheb_nodes


@dataclass(frozen=True)
class PeriodMatrix:
    """Moments I_mj over the slit tops, rows m = 1..n, columns j = 0..n-1.

    Row n is one moment past the solvability range; it feeds the
    right-hand sides of the pole-at-infinity case.
    """

    I: np.ndarray

    def __init__(self, I) -> None:
        arr = np.array(I, dtype=float)  # owned copy; frozen below
        arr.setflags(write=False)
        object.__setattr__(self, "I", arr)

    @property
    def n(self) -> int:
        return self.I.shape[1]

    def entry(self, m: int, j: int) -> float:
        """I_mj with the 1-based moment index m used in the formulas."""
        return float(self.I[m - 1, j])


def weighted_moment(branch: BranchData, j: int, f, power: int, N: int) -> float:
    """integral over slit j of f(xi) xi^power / |q(xi)| d xi by Gauss nodes."""
    a, b = branch.slit(j)
    nodes = cheb_nodes(a, b, N)
    r = weight_factor(branch, nodes, j)
    vals = f(nodes) if callable(f) else np.asarray(f)
    return (np.pi / N) * float(np.sum(vals * nodes**power / r))


def period_matrix(branch: BranchData, numerics: NumericsConfig = NumericsConfig()) -> PeriodMatrix:
    """All period moments up to row n; every entry is positive."""
    n = branch.n
    I = np.empty((n, n))
    for j in range(n):
        a, b = branch.slit(j)
        nodes = cheb_nodes(a, b, numerics.N)
        r = weight_factor(branch, nodes, j)
        for m in range(1, n + 1):
            I[m - 1, j] = (np.pi / numerics.N) * np.sum(nodes ** (m - 1) / r)
    return PeriodMatrix(I)


def system_matrix(period: PeriodMatrix) -> np.ndarray:
    """The (n-1)x(n-1) sign-alternating block (-1)^j I_mj, j, m = 1..n-1."""
    n = period.n
    A = np.empty((n - 1, n - 1))
    for m in range(1, n):
        for j in range(1, n):
            A[m - 1, j - 1] = (-1.0) ** j * period.entry(m, j)
    return A


def _solve_alternating(period: PeriodMatrix, rhs: np.ndarray) -> np.ndarray:
    A = system_matrix(period)
    try:
        return np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as exc:  # period matrix is provably regular
        raise SolverError(f"singular solvability system: {exc}") from exc


def solve_a(
    period: PeriodMatrix,
    branch: BranchData,
    derived: DerivedConstants,
    a0: float,
    numerics: NumericsConfig = NumericsConfig(),
) -> np.ndarray:
    """Constants a_j making the first solution bounded, given free a_0."""
    n = branch.n
    if n == 1:
        return np.array([a0])
    rhs = np.empty(n - 1)
    for m in range(1, n):
        if derived.pole_at_infinity:
            total = derived.c_double_prime * sum(
                (-1.0) ** j * period.entry(m + 1, j) for j in range(n)
            )
        else:
            total = sum(
                (-1.0) ** j
                * weighted_moment(
                    branch, j, lambda x: pole_density(x, derived), m - 1, numerics.N
                )
                for j in range(n)
            )
        rhs[m - 1] = total - period.entry(m, 0) * a0
    return np.concatenate(([a0], _solve_alternating(period, rhs)))


def solve_rho(
    period: PeriodMatrix,
    branch: BranchData,
    derived: DerivedConstants,
    rho0: float,
    numerics: NumericsConfig = NumericsConfig(),
) -> np.ndarray:
    """Constants rho_j making the second solution bounded, given free rho_0."""
    n = branch.n
    if n == 1:
        return np.array([rho0])
    rhs = np.empty(n - 1)
    for m in range(1, n):
        km = sum(
            (-1.0) ** j
            * derived.lam[j]
            * weighted_moment(branch, j, lambda x, j=j: g0(x, j, derived), m - 1, numerics.N)
            for j in range(n)
        )
        rhs[m - 1] = -(km + period.entry(m, 0) * rho0)
    return np.concatenate(([rho0], _solve_alternating(period, rhs)))


@dataclass(frozen=True)
class SolvabilityConstants:
    """Solved constant vectors of both boundary-value problems."""

    a: np.ndarray
    rho: np.ndarray
    rho_prime: np.ndarray
    d_prime: np.ndarray

    def __init__(self, a, rho, rho_prime, d_prime) -> None:
        for name, value in (
            ("a", a), ("rho", rho), ("rho_prime", rho_prime), ("d_prime", d_prime)
        ):
            arr = np.array(value, dtype=float)  # owned copy; frozen below
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return len(self.a)


def build_constants(a, rho, derived: DerivedConstants) -> SolvabilityConstants:
    """Bundle a, rho with the derived per-slit offsets rho'_j and d'_j."""
    a = np.asarray(a, dtype=float)
    rho = np.asarray(rho, dtype=float)
    lam = np.asarray(derived.lam)
    rho_prime = rho / lam
    return SolvabilityConstants(a, rho, rho_prime, derived.beta0 - rho_prime)


def boundedness_residuals(
    branch: BranchData,
    derived: DerivedConstants,
    constants: SolvabilityConstants,
    numerics: NumericsConfig = NumericsConfig(),
) -> dict:
    """Moment residuals of both boundedness conditions, freshly quadratured.

    Uses twice the configured node count so the check is not the identical
    discretization the constants were solved on.  Residuals are reported
    raw and relative to the absolute-integrand scale of each moment.
    """
    n = branch.n
    N = 2 * numerics.N
    res_a, res_r, scale_a, scale_r = [], [], [], []
    for m in range(1, n):
        ra = rr = sa = sr = 0.0
        for j in range(n):
            phi = lambda x, j=j: constants.a[j] - pole_density(x, derived)
            dens = lambda x, j=j: g0(x, j, derived) + constants.rho_prime[j]
            ra += (-1.0) ** j * weighted_moment(branch, j, phi, m - 1, N)
            rr += (-1.0) ** j * derived.lam[j] * weighted_moment(
                branch, j, dens, m - 1, N
            )
            sa += weighted_moment(
                branch, j, lambda x, phi=phi: np.abs(phi(x) * x ** (m - 1)), 0, N
            )
            sr += abs(derived.lam[j]) * weighted_moment(
                branch, j, lambda x, dens=dens: np.abs(dens(x) * x ** (m - 1)), 0, N
            )
        res_a.append(ra)
        res_r.append(rr)
        scale_a.append(sa)
        scale_r.append(sr)
    res_a, res_r = np.array(res_a), np.array(res_r)
    scale_a, scale_r = np.array(scale_a), np.array(scale_r)
    floor = 1e-30
    rel_a = float(np.max(np.abs(res_a) / np.maximum(scale_a, floor), initial=0.0))
    rel_r = float(np.max(np.abs(res_r) / np.maximum(scale_r, floor), initial=0.0))
    return {
        "a_residuals": res_a.tolist(),
        "rho_residuals": res_r.tolist(),
        "a_scales": scale_a.tolist(),
        "rho_scales": scale_r.tolist(),
        "a_relative": rel_a,
        "rho_relative": rel_r,
    }


def antisymmetric_free_values(
    period: PeriodMatrix,
    branch: BranchData,
    derived: DerivedConstants,
    numerics: NumericsConfig = NumericsConfig(),
) -> tuple[float, float]:
    """Free values (a_0, rho_0) giving a_{n-1} = -a_0 and rho_{n-1} = -rho_0.

    Both solved vectors are affine in their free constant, so each fixed
    point is one scalar linear equation probed with two solves.
    """
    n = branch.n
    if n < 2:
        raise SolverError("antisymmetric selection needs at least two slits")

    def fixed_point(solver) -> float:
        v0 = solver(0.0)[n - 1]
        v1 = solver(1.0)[n - 1]
        slope = v1 - v0
        denom = 1.0 + slope
        if abs(denom) < 1e-12:
            raise SolverError("antisymmetric constants are not determined")
        return -v0 / denom

    a0 = fixed_point(lambda t: solve_a(period, branch, derived, t, numerics))
    rho0 = fixed_point(lambda t: solve_rho(period, branch, derived, t, numerics))
    return a0, rho0


# -- printed closed forms (cross-check targets) --------------------------------


def is_symmetric_pair(branch: BranchData, tol: float = 1e-12) -> bool:
    """True for two slits mirror-symmetric about the origin."""
    if branch.n != 2:
        return False
    k = branch.endpoints
    scale = max(abs(v) for v in k)
    return abs(k[0] + k[3]) <= tol * scale and abs(k[1] + k[2]) <= tol * scale


def n2_closed_form_a(
    period: PeriodMatrix,
    branch: BranchData,
    derived: DerivedConstants,
    a0: float,
    numerics: NumericsConfig = NumericsConfig(),
) -> np.ndarray:
    """Two slits: the scalar difference formula (mirror-symmetric pair)."""
    I = period.entry(1, 1)
    j0 = weighted_moment(branch, 0, lambda x: pole_density(x, derived), 0, numerics.N)
    j1 = weighted_moment(branch, 1, lambda x: pole_density(x, derived), 0, numerics.N)
    return np.array([a0, a0 - (j0 - j1) / I])


def n2_closed_form_rho(
    period: PeriodMatrix,
    branch: BranchData,
    derived: DerivedConstants,
    rho0: float,
    numerics: NumericsConfig = NumericsConfig(),
) -> np.ndarray:
    """Two slits: the scalar difference formula for rho."""
    I = period.entry(1, 1)
    k0 = derived.lam[0] * weighted_moment(
        branch, 0, lambda x: g0(x, 0, derived), 0, numerics.N
    )
    k1 = derived.lam[1] * weighted_moment(
        branch, 1, lambda x: g0(x, 1, derived), 0, numerics.N
    )
    return np.array([rho0, rho0 + (k0 - k1) / I])


def _n2_odd_moment(branch: BranchData, N: int) -> float:
    """integral over the right slit of d xi / (xi |q|)."""
    return weighted_moment(branch, 1, lambda x: 1.0 / x, 0, N)


def n2_symmetric_a(
    period: PeriodMatrix,
    branch: BranchData,
    derived: DerivedConstants,
    numerics: NumericsConfig = NumericsConfig(),
) -> np.ndarray:
    """Antisymmetric pair for the origin-symmetric case (pole at 0).

    The driving constant is Im c; the printed form writes Im c_{-1}, which
    agrees whenever (tau_inf_bar - tau_bar)/mu is real.
    """
    a1 = derived.c_double_prime * _n2_odd_moment(branch, numerics.N) / period.entry(1, 1)
    return np.array([-a1, a1])


def n2_symmetric_rho(
    period: PeriodMatrix,
    branch: BranchData,
    derived: DerivedConstants,
    numerics: NumericsConfig = NumericsConfig(),
) -> np.ndarray:
    """Antisymmetric rho pair for the origin-symmetric case (pole at 0)."""
    rho1 = (
        -derived.lam[0]
        * derived.c_star[0]
        * _n2_odd_moment(branch, numerics.N)
        / period.entry(1, 1)
    )
    return np.array([-rho1, rho1])


def n3_closed_form_a(
    period: PeriodMatrix,
    branch: BranchData,
    derived: DerivedConstants,
    a0: float,
    numerics: NumericsConfig = NumericsConfig(),
) -> np.ndarray:
    """Three slits: explicit 2x2 elimination as printed."""
    I = period.entry
    delta = I(1, 1) * I(2, 2) - I(1, 2) * I(2, 1)
    J = np.empty(3)
    for m in (1, 2):
        if derived.pole_at_infinity:
            J[m] = derived.c_double_prime * (
                I(m + 1, 0) - I(m + 1, 1) + I(m + 1, 2)
            ) - a0 * I(m, 0)
        else:
            parts = [
                weighted_moment(
                    branch, j, lambda x: pole_density(x, derived), m - 1, numerics.N
                )
                for j in range(3)
            ]
            J[m] = parts[0] - parts[1] + parts[2] - a0 * I(m, 0)
    a1 = (J[2] * I(1, 2) - J[1] * I(2, 2)) / delta
    a2 = (J[2] * I(1, 1) - J[1] * I(2, 1)) / delta
    return np.array([a0, a1, a2])


def n3_closed_form_rho(
    period: PeriodMatrix,
    branch: BranchData,
    derived: DerivedConstants,
    rho0: float,
    numerics: NumericsConfig = NumericsConfig(),
) -> np.ndarray:
    """Three slits: explicit 2x2 elimination for rho as printed."""
    I = period.entry
    delta = I(1, 1) * I(2, 2) - I(1, 2) * I(2, 1)
    K = np.empty(3)
    for m in (1, 2):
        if derived.pole_at_infinity:
            K[m] = (
                sum(
                    (-1.0) ** j * derived.c_star[j] * derived.lam[j] * I(m + 1, j)
                    for j in range(3)
                )
                + rho0 * I(m, 0)
            )
        else:
            parts = [
                derived.lam[j]
                * weighted_moment(
                    branch, j, lambda x, j=j: g0(x, j, derived), m - 1, numerics.N
                )
                for j in range(3)
            ]
            K[m] = parts[0] - parts[1] + parts[2] + rho0 * I(m, 0)
    rho1 = (K[1] * I(2, 2) - K[2] * I(1, 2)) / delta
    rho2 = (K[1] * I(2, 1) - K[2] * I(1, 1)) / delta
    return np.array([rho0, rho1, rho2])
