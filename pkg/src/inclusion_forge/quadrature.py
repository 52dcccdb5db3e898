"""Gauss-Chebyshev quadrature and Cauchy integrals with sqrt endpoint weight.

Every integral in this package has the form

    integral_a^b  h(eta) / sqrt((eta - a)(b - eta)) * K(eta) d eta

with h smooth and K either 1 (plain quadrature), 1/(eta - xi) with xi inside
(a, b) (principal value), or 1/(eta - zeta) with zeta off [a, b] (Cauchy
integral).  The plain case is the classical N-point Gauss-Chebyshev rule;
the other two are evaluated through the Chebyshev expansion of h: the
polynomials of the first kind map to second-kind polynomials inside the
interval and to a geometric kernel outside, so a single coefficient vector
serves boundary and off-interval targets alike, arbitrarily close to the
interval.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import dct

__all__ = [
    "ChebyshevSeries",
    "cheb_nodes",
    "gauss_cheb",
    "cheb_coeffs",
    "series_from_samples",
    "singular_on",
    "cauchy_off",
]


def cheb_nodes(a: float, b: float, N: int) -> np.ndarray:
    """First-kind Chebyshev nodes mapped to (a, b), ordered right to left."""
    j = np.arange(1, N + 1)
    x = np.cos((2 * j - 1) * np.pi / (2 * N))
    return 0.5 * (b + a) + 0.5 * (b - a) * x


def gauss_cheb(h, a: float, b: float, N: int):
    """N-point Gauss-Chebyshev value of integral h(eta)/sqrt((eta-a)(b-eta)).

    ``h`` is a callable vectorized over node arrays.  Exact for h a
    polynomial of degree <= 2N - 1 in the mapped variable.
    """
    nodes = cheb_nodes(a, b, N)
    return (np.pi / N) * np.sum(h(nodes), axis=-1)


@dataclass(frozen=True)
class ChebyshevSeries:
    """First-kind Chebyshev coefficients of a smooth density on [a, b]."""

    a: float
    b: float
    coef: np.ndarray

    def __init__(self, a: float, b: float, coef) -> None:
        object.__setattr__(self, "a", float(a))
        object.__setattr__(self, "b", float(b))
        c = np.array(coef)  # owned copy; frozen below
        if not np.iscomplexobj(c):
            c = c.astype(float)
        c.setflags(write=False)
        object.__setattr__(self, "coef", c)

    @property
    def delta_plus(self) -> float:
        return 0.5 * (self.b + self.a)

    @property
    def delta_minus(self) -> float:
        return 0.5 * (self.b - self.a)

    @property
    def order(self) -> int:
        return len(self.coef) - 1

    @property
    def truncation_indicator(self) -> float:
        """|alpha_M| relative to the largest coefficient; ~0 when resolved."""
        mags = np.abs(self.coef)
        top = mags.max()
        if top == 0.0:
            return 0.0
        return float(mags[-1] / top)

    def map_to_unit(self, t):
        return (np.asarray(t) - self.delta_plus) / self.delta_minus


def series_from_samples(samples, a: float, b: float, M: int) -> ChebyshevSeries:
    """Series through degree M from values at the N first-kind nodes of (a, b).

    ``samples`` must be ordered like :func:`cheb_nodes` output (right to
    left); the coefficients are the N-point Gauss discretization of the
    orthogonality integrals, computed as a type-II DCT.
    """
    samples = np.asarray(samples)
    N = len(samples)
    if M > N:
        raise ValueError(f"M = {M} exceeds sample count N = {N}")
    if np.iscomplexobj(samples):
        raw = dct(samples.real, type=2) + 1j * dct(samples.imag, type=2)
    else:
        raw = dct(samples, type=2)
    coef = raw[: M + 1] / N
    coef[0] *= 0.5
    return ChebyshevSeries(a, b, coef)


def cheb_coeffs(h, a: float, b: float, N: int, M: int) -> ChebyshevSeries:
    """Expand the callable h over [a, b] in Chebyshev polynomials up to T_M."""
    return series_from_samples(h(cheb_nodes(a, b, N)), a, b, M)


def _second_kind_sum(coef: np.ndarray, x):
    """sum_{m>=1} coef[m] U_{m-1}(x) by the ascending recurrence."""
    x = np.asarray(x, dtype=float)
    total = np.zeros(x.shape, dtype=coef.dtype)
    u_prev = np.zeros_like(x)
    u = np.ones_like(x)
    for m in range(1, len(coef)):
        total = total + coef[m] * u
        u_prev, u = u, 2.0 * x * u - u_prev
    return total


def singular_on(series: ChebyshevSeries, xi):
    """Principal value of the weighted Cauchy integral at xi in (a, b).

    T_0 contributes nothing and T_m maps to pi U_{m-1}, so the value is
    (pi / delta_minus) * sum_{m>=1} alpha_m U_{m-1}(x) at the mapped target.
    Endpoint targets are admitted (U_{m-1}(+-1) is finite).
    """
    x = series.map_to_unit(xi)
    out = (np.pi / series.delta_minus) * _second_kind_sum(series.coef, x)
    if np.isscalar(xi) or np.ndim(xi) == 0:
        return out.item()
    return out


def _sqrt_off_cut(x):
    """Branch of sqrt(x^2 - 1) cut along [-1, 1] with sqrt ~ x at infinity."""
    return np.sqrt(x - 1.0) * np.sqrt(x + 1.0)


def cauchy_off(series: ChebyshevSeries, zeta):
    """Weighted Cauchy integral at a target zeta off the closed interval.

    In the mapped variable x, T_m integrates to -pi w^m / sqrt(x^2 - 1)
    where w is the root of w^2 - 2xw + 1 = 0 with |w| < 1; the formula is
    the exact analytic continuation of the principal-value expansion, so it
    stays accurate arbitrarily close to the interval (only the truncation
    of the series matters there).
    """
    x = np.asarray(series.map_to_unit(np.asarray(zeta, dtype=complex)))
    root = _sqrt_off_cut(x)
    w = x - root
    powers = w[..., None] ** np.arange(len(series.coef))
    total = powers @ series.coef
    out = -(np.pi / series.delta_minus) * total / root
    if np.isscalar(zeta) or np.ndim(zeta) == 0:
        return complex(out)
    return out
