"""The square-root branch q of p(zeta) = prod (zeta - k_i) over the slits.

With 2n real branch points k_0 < ... < k_{2n-1} and cuts along the slits
l_j = [k_{2j}, k_{2j+1}], the branch is fixed by q(zeta) ~ zeta^n at
infinity.  It is realized as the product of principal square roots
prod sqrt(zeta - k_i): each factor jumps across the ray (-inf, k_i], and off
the slits an even number of factors jump simultaneously, so the jumps cancel
and the product is continuous exactly on the cut plane.  On the positive
real axis beyond k_{2n-1} every factor is positive, which pins the
normalization without any further sign correction.

On the banks q is pure imaginary: approaching slit m from above gives
q = i * (-1)^(n-1-m) * |q|, so the top-bank sign alternates slit to slit and
is +i on the rightmost slit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import EvaluationError, SlitConfiguration


@dataclass(frozen=True)
class BranchData:
    """Branch points of one slit configuration."""

    endpoints: tuple[float, ...]

    def __init__(self, endpoints) -> None:
        if isinstance(endpoints, SlitConfiguration):
            endpoints = endpoints.endpoints
        object.__setattr__(self, "endpoints", tuple(float(k) for k in endpoints))
        e = self.endpoints
        if len(e) % 2 != 0 or len(e) < 2:
            raise EvaluationError("branch needs an even number of endpoints")
        if any(e[i] >= e[i + 1] for i in range(len(e) - 1)):
            raise EvaluationError("branch endpoints must be strictly increasing")

    @property
    def n(self) -> int:
        return len(self.endpoints) // 2

    @property
    def slits(self) -> tuple[tuple[float, float], ...]:
        e = self.endpoints
        return tuple((e[2 * j], e[2 * j + 1]) for j in range(self.n))

    def slit(self, j: int) -> tuple[float, float]:
        return self.endpoints[2 * j], self.endpoints[2 * j + 1]


def top_bank_sign(n: int, m: int) -> int:
    """Sign s with q = s * i * |q| on the top bank of slit m (0-based)."""
    return -1 if (n - 1 - m) % 2 else 1


def eval_q(branch: BranchData, zeta):
    """Evaluate the branch off the slits; scalars and arrays accepted.

    Points on a closed slit are rejected: the two banks carry different
    values there, use :func:`bank_value` instead.
    """
    z = np.asarray(zeta, dtype=complex)
    k = np.asarray(branch.endpoints)
    on_cut = z.imag == 0.0
    if np.any(on_cut):
        x = np.where(on_cut, z.real, np.inf)
        for a, b in branch.slits:
            if np.any((x >= a) & (x <= b)):
                raise EvaluationError(
                    "q is two-valued on the slits; use bank_value there"
                )
    vals = np.prod(np.sqrt(z[..., None] - k), axis=-1)
    if np.isscalar(zeta) or np.ndim(zeta) == 0:
        return complex(vals)
    return vals


def abs_q(branch: BranchData, xi):
    """|q(xi)| = sqrt(|p(xi)|) for real xi (any position)."""
    x = np.asarray(xi, dtype=float)
    k = np.asarray(branch.endpoints)
    p = np.prod(x[..., None] - k, axis=-1)
    out = np.sqrt(np.abs(p))
    if np.isscalar(xi) or np.ndim(xi) == 0:
        return float(out)
    return out


def bank_value(branch: BranchData, xi, m: int, bank: int):
    """Boundary value of q on bank +1 (above) or -1 (below) of slit m.

    Endpoints return exactly 0; strictly interior points return the pure
    imaginary value +-i (-1)^(n-1-m) |q(xi)|.
    """
    if bank not in (+1, -1):
        raise EvaluationError(f"bank must be +1 or -1, got {bank!r}")
    a, b = branch.slit(m)
    x = np.asarray(xi, dtype=float)
    if np.any((x < a) | (x > b)):
        raise EvaluationError(f"xi outside closed slit {m} = [{a}, {b}]")
    sign = bank * top_bank_sign(branch.n, m)
    vals = 1j * sign * abs_q(branch, x)
    vals = np.where((x == a) | (x == b), 0.0 + 0.0j, vals)
    if np.isscalar(xi) or np.ndim(xi) == 0:
        return complex(vals)
    return vals


def weight_factor(branch: BranchData, xi, j: int):
    """Smooth positive factor r_j with |q| = r_j * sqrt((xi-a)(b-xi)) on slit j.

    The vanishing endpoint factors of slit j are removed analytically, so
    r_j stays finite and strictly positive on the closed slit and densities
    divided by it remain smooth.
    """
    a, b = branch.slit(j)
    x = np.asarray(xi, dtype=float)
    if np.any((x < a) | (x > b)):
        raise EvaluationError(f"xi outside closed slit {j} = [{a}, {b}]")
    k = np.asarray(branch.endpoints)
    others = np.delete(k, [2 * j, 2 * j + 1])
    prod = np.prod(np.abs(x[..., None] - others), axis=-1)
    out = np.sqrt(prod)
    if np.isscalar(xi) or np.ndim(xi) == 0:
        return float(out)
    return out
