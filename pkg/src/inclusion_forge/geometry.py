"""Contour profiles and their validity diagnostics.

A profile is the closed polyline traced by the map along both banks of one
slit: top bank left to right, bottom bank right to left, Chebyshev-clustered
in the slit parameter so the physical points concentrate near the high
curvature ends.  Validity of a configuration means every profile is a
simple curve, profiles are pairwise disjoint and not nested, and none has
collapsed to a segment.  All predicates are tolerance based; touching
closer than 1e-9 of the scale counts as intersecting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_TOUCH_REL = 1e-9
_DEGENERATE_AREA_REL = 1e-10


@dataclass(frozen=True)
class ContourProfile:
    """Closed polyline image of one slit with its parameter bookkeeping.

    ``points[k]`` is the image of slit parameter ``xi[k]`` approached from
    bank ``bank[k]``; the first point is repeated at the end to close the
    polyline.  Orientation is normalized counterclockwise.
    """

    slit_index: int
    points: np.ndarray
    xi: np.ndarray
    bank: np.ndarray
    closure_error: float

    def __init__(self, slit_index, points, xi, bank, closure_error) -> None:
        object.__setattr__(self, "slit_index", int(slit_index))
        for name, val, dt in (
            ("points", points, complex), ("xi", xi, float), ("bank", bank, int)
        ):
            arr = np.array(val, dtype=dt)  # owned copy; frozen below
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "closure_error", float(closure_error))

    @property
    def signed_area(self) -> float:
        z = self.points
        x, y = z.real, z.imag
        return 0.5 * float(np.sum(x[:-1] * y[1:] - x[1:] * y[:-1]))

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        z = self.points
        return (
            float(z.real.min()), float(z.imag.min()),
            float(z.real.max()), float(z.imag.max()),
        )

    @property
    def diameter(self) -> float:
        x0, y0, x1, y1 = self.bbox
        return float(np.hypot(x1 - x0, y1 - y0))

    @property
    def degenerate(self) -> bool:
        scale = max(self.diameter, 1e-300)
        return abs(self.signed_area) < _DEGENERATE_AREA_REL * scale * scale

    def oriented_ccw(self) -> "ContourProfile":
        """Counterclockwise copy (identity when already counterclockwise)."""
        if self.signed_area >= 0:
            return self
        return ContourProfile(
            self.slit_index,
            self.points[::-1],
            self.xi[::-1],
            self.bank[::-1],
            self.closure_error,
        )


def bank_parameter_grid(a: float, b: float, P: int) -> np.ndarray:
    """P second-kind Chebyshev points on [a, b] including both endpoints.

    The endpoints are pinned to a and b exactly (the mapped cosine form
    misses them by an ulp, which would leave a spurious residue of the
    endpoint-vanishing factors).
    """
    theta = np.pi * np.arange(P) / (P - 1)
    grid = 0.5 * (b + a) - 0.5 * (b - a) * np.cos(theta)
    grid[0] = a
    grid[-1] = b
    return grid


def build_profile(boundary_fn, m: int, a: float, b: float, P: int) -> ContourProfile:
    """Trace contour m with P samples per bank.

    ``boundary_fn(xi_array, bank, m)`` must return map values on the given
    bank.  The closure error compares the two bank values at both slit
    endpoints (their bank-dependent terms vanish there analytically).
    """
    grid = bank_parameter_grid(a, b, P)
    top = np.asarray(boundary_fn(grid, +1, m))
    bot = np.asarray(boundary_fn(grid, -1, m))
    closure = max(abs(top[0] - bot[0]), abs(top[-1] - bot[-1]))
    points = np.concatenate([top, bot[-2:0:-1], top[:1]])
    xi = np.concatenate([grid, grid[-2:0:-1], grid[:1]])
    bank = np.concatenate(
        [np.full(P, 1), np.full(max(P - 2, 0), -1), [1]]
    )
    profile = ContourProfile(m, points, xi, bank, closure)
    return profile.oriented_ccw()


def build_profiles(boundary_fn, slits, P: int) -> list[ContourProfile]:
    """One counterclockwise closed profile per slit."""
    return [
        build_profile(boundary_fn, m, a, b, P) for m, (a, b) in enumerate(slits)
    ]


# -- segment predicates --------------------------------------------------------


def _segments(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return z[:-1], z[1:]


def _orient(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _segments_cross(p0, p1, q0, q1) -> np.ndarray:
    """Proper-or-collinear-overlap intersection matrix of two segment sets."""
    ax, ay = p0.real[:, None], p0.imag[:, None]
    bx, by = p1.real[:, None], p1.imag[:, None]
    cx, cy = q0.real[None, :], q0.imag[None, :]
    dx, dy = q1.real[None, :], q1.imag[None, :]
    d1 = _orient(ax, ay, bx, by, cx, cy)
    d2 = _orient(ax, ay, bx, by, dx, dy)
    d3 = _orient(cx, cy, dx, dy, ax, ay)
    d4 = _orient(cx, cy, dx, dy, bx, by)
    proper = ((d1 > 0) != (d2 > 0)) & ((d3 > 0) != (d4 > 0)) \
        & (d1 != 0) & (d2 != 0) & (d3 != 0) & (d4 != 0)

    def on_segment(ox, oy, ex, ey, px, py):
        return (
            (np.minimum(ox, ex) <= px) & (px <= np.maximum(ox, ex))
            & (np.minimum(oy, ey) <= py) & (py <= np.maximum(oy, ey))
        )

    collinear = (
        ((d1 == 0) & on_segment(ax, ay, bx, by, cx, cy))
        | ((d2 == 0) & on_segment(ax, ay, bx, by, dx, dy))
        | ((d3 == 0) & on_segment(cx, cy, dx, dy, ax, ay))
        | ((d4 == 0) & on_segment(cx, cy, dx, dy, bx, by))
    )
    return proper | collinear


def _segment_distance(p0, p1, q0, q1) -> float:
    """Minimum distance between two segment sets (vectorized)."""

    def point_seg(pts, s0, s1):
        d = s1 - s0
        den = np.maximum(np.abs(d) ** 2, 1e-300)
        t = np.clip(((pts[:, None] - s0[None, :]) * np.conj(d[None, :])).real
                    / den[None, :], 0.0, 1.0)
        proj = s0[None, :] + t * d[None, :]
        return np.abs(pts[:, None] - proj).min()

    return min(
        point_seg(p0, q0, q1), point_seg(p1, q0, q1),
        point_seg(q0, p0, p1), point_seg(q1, p0, p1),
    )


def self_intersects(profile: ContourProfile) -> bool:
    """True when the closed polyline crosses itself (adjacent edges ignored)."""
    z = profile.points
    p0, p1 = _segments(z)
    k = len(p0)
    cross = _segments_cross(p0, p1, p0, p1)
    idx = np.arange(k)
    adjacent = (
        (np.abs(idx[:, None] - idx[None, :]) <= 1)
        | (np.abs(idx[:, None] - idx[None, :]) == k - 1)
    )
    return bool(np.any(cross & ~adjacent))


def _winding_contains(profile: ContourProfile, point: complex) -> bool:
    z = profile.points - point
    angles = np.angle(z[1:] / z[:-1])
    return abs(np.sum(angles)) > np.pi


def disjoint(p1: ContourProfile, p2: ContourProfile) -> bool:
    """True when the two closed contours bound disjoint, non-nested regions.

    Crossing or touching (closer than 1e-9 of the larger diameter) counts
    as intersecting, and either contour containing the other counts as
    embedded; both make the pair non-disjoint.
    """
    x0a, y0a, x1a, y1a = p1.bbox
    x0b, y0b, x1b, y1b = p2.bbox
    scale = max(p1.diameter, p2.diameter)
    pad = _TOUCH_REL * scale
    if x1a + pad < x0b or x1b + pad < x0a or y1a + pad < y0b or y1b + pad < y0a:
        return True
    a0, a1 = _segments(p1.points)
    b0, b1 = _segments(p2.points)
    if np.any(_segments_cross(a0, a1, b0, b1)):
        return False
    if _segment_distance(a0, a1, b0, b1) < pad:
        return False
    if _winding_contains(p1, p2.points[0]) or _winding_contains(p2, p1.points[0]):
        return False
    return True


# -- shape diagnostics ---------------------------------------------------------


def fit_ellipse(points) -> float:
    """Scale-normalized residual of the best algebraic conic fit.

    Points are centered and scaled to unit RMS, the 6-coefficient conic is
    fit with a unit-norm constraint, and the RMS algebraic residual of the
    optimal coefficient vector is returned: ~1e-15 for exact conics, order
    1e-1 for a square.
    """
    z = np.asarray(points, dtype=complex)
    if abs(z[0] - z[-1]) == 0.0 and len(z) > 1:
        z = z[:-1]
    x, y = z.real, z.imag
    x = x - x.mean()
    y = y - y.mean()
    scale = np.sqrt(np.mean(x * x + y * y))
    if scale == 0.0:
        return 0.0
    x, y = x / scale, y / scale
    design = np.column_stack(
        [x * x, x * y, y * y, x, y, np.ones_like(x)]
    )
    _, sing, _ = np.linalg.svd(design, full_matrices=False)
    return float(sing[-1] / np.sqrt(len(x)))


@dataclass(frozen=True)
class SymmetryReport:
    """Maximal deviations, normalized by the larger contour diameter."""

    central_deviation: float | None
    conjugation_deviation: float | None


def _match_indices(profile: ContourProfile, xi: np.ndarray, bank: np.ndarray,
                   tol: float) -> np.ndarray:
    """Index into profile for each requested (xi, bank) parameter pair.

    Slit endpoints are sampled on one bank only (both banks coincide
    there), so an xi-only match is accepted as fallback.
    """
    out = np.empty(len(xi), dtype=int)
    for i, (x, s) in enumerate(zip(xi, bank)):
        near = np.abs(profile.xi - x) <= tol
        cand = np.nonzero(near & (profile.bank == s))[0]
        if len(cand) == 0:
            cand = np.nonzero(near)[0]
        if len(cand) == 0:
            raise ValueError("profiles were not sampled on matching grids")
        out[i] = cand[0]
    return out


def central_symmetry_deviation(p1: ContourProfile, p2: ContourProfile) -> float:
    """max |z1(xi, bank) + z2(-xi, -bank)| over matched sample parameters.

    Meaningful for mirror-image slit pairs sampled on the same relative
    grid (the default sampling is symmetric).
    """
    tol = 1e-9 * max(1.0, np.abs(p1.xi).max())
    idx = _match_indices(p2, -p1.xi[:-1], -p1.bank[:-1], tol)
    return float(np.abs(p1.points[:-1] + p2.points[idx]).max())


def conjugation_symmetry_deviation(profile: ContourProfile) -> float:
    """max |conj(z(xi, +)) - z(xi, -)| over matched sample parameters."""
    tol = 1e-9 * max(1.0, np.abs(profile.xi).max())
    sel = profile.bank[:-1] == 1
    xi = profile.xi[:-1][sel]
    idx = _match_indices(profile, xi, -np.ones(len(xi), dtype=int), tol)
    top = profile.points[:-1][sel]
    return float(np.abs(np.conj(top) - profile.points[idx]).max())


def symmetry_checks(profiles: list[ContourProfile]) -> SymmetryReport:
    """Central symmetry of the outermost mirror pair plus conjugation.

    Central deviation is reported when the first and last slit grids mirror
    each other; conjugation deviation is always reported (maximal over all
    contours).  Deviations are normalized by the larger diameter.
    """
    scale = max(p.diameter for p in profiles)
    scale = max(scale, 1e-300)
    conj_dev = max(conjugation_symmetry_deviation(p) for p in profiles) / scale
    central = None
    if len(profiles) >= 2:
        try:
            central = central_symmetry_deviation(profiles[0], profiles[-1]) / scale
        except ValueError:
            central = None
    return SymmetryReport(central, conj_dev)


def hausdorff_distance(z1, z2) -> float:
    """Symmetric vertex-to-polyline Hausdorff distance of two polylines."""
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)

    def one_sided(a, b):
        b0, b1 = b[:-1], b[1:]
        d = b1 - b0
        den = np.maximum(np.abs(d) ** 2, 1e-300)
        t = np.clip(((a[:, None] - b0[None, :]) * np.conj(d[None, :])).real
                    / den[None, :], 0.0, 1.0)
        proj = b0[None, :] + t * d[None, :]
        return np.abs(a[:, None] - proj).min(axis=1).max()

    return float(max(one_sided(z1, z2), one_sided(z2, z1)))
