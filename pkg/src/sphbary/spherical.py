"""Spherical barycentric coordinates from 3D coordinates of the origin.

For x strictly inside the polygon, the coordinates are

    psi_i(x) = phi_i(0) / (phi_{n+2}(0) - phi_{n+1}(0)),   i = 1..n

where phi are any 3D barycentric coordinates of the origin inside the
polyhedron [v_1..v_n, x, -x] (indices n+1 for x, n+2 for -x).  The psi are
non-negative on convex polygons, reproduce x as sum(psi_i v_i), restrict
linearly to the edges and are the Kronecker delta at the vertices.

On an edge the same limit collapses to the two-vertex decomposition
x = a v_j + b v_{j+1}: because x, -x, v_j, v_{j+1} and the origin are all
contained in span(v_j, v_{j+1}), the boundary-extended ratios
phi_j(0)/phi_{n+2}(0) and phi_{j+1}(0)/phi_{n+2}(0) equal exactly the Gram
solution (a, b), which is how the edge case is evaluated here (the optional
debug mode re-derives them from planar barycentric coordinates of the
origin inside the triangle (-x, v_j, v_{j+1}) and asserts agreement).

For the mean value backend the quotient also has a closed form built from
the angles theta_i = angle(x, v_i) and alpha_i = angle(x cross v_i,
x cross v_{i+1}); see :func:`closed_form_mv_weights`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AlphaNearPi,
    AngleDegenerate,
    ExteriorPoint,
    NonPositiveDenominator,
    NotConvexForWC,
)
from .geom import (
    DEFAULT_TOL,
    PointLocation,
    SphericalPolygon,
    Tolerances,
    angle_between,
    locate_point,
    normalize,
)
from .polyhedron import build_q, build_ring_q, coords_at_origin

__all__ = [
    "CoordinateVector",
    "AngleCache",
    "angles",
    "closed_form_mv_weights",
    "spherical_coords",
    "extended_spherical_coords",
    "reconstruction_residual",
]


@dataclass(frozen=True)
class CoordinateVector:
    """Length-n coordinate values with their method tag and the location
    classification that selected the evaluation formula.  `denom` captures
    the interior-formula denominator phi_{n+2} - phi_{n+1} when one was
    computed (None on the boundary)."""

    values: np.ndarray
    method: str
    location: PointLocation
    denom: float | None = None

    def __post_init__(self):
        self.values.setflags(write=False)

    @property
    def total(self) -> float:
        return float(self.values.sum())


def reconstruction_residual(values, vertices, x) -> float:
    """|| sum(values_i * v_i) - x ||, the linear-precision defect."""
    return float(np.linalg.norm(np.asarray(values) @ np.asarray(vertices) - np.asarray(x)))


@dataclass(frozen=True)
class AngleCache:
    """Per-(polygon, x) angles: theta[i] = angle(x, v_i) and
    alpha[i] = angle(x cross v_i, x cross v_{i+1}), cyclic."""

    theta: np.ndarray
    alpha: np.ndarray

    def __post_init__(self):
        self.theta.setflags(write=False)
        self.alpha.setflags(write=False)


def angles(polygon: SphericalPolygon, x, tol: Tolerances | None = None) -> AngleCache:
    """Angle cache for the closed-form weights; x must not coincide with or
    oppose any vertex (AngleDegenerate otherwise)."""
    tol = tol or polygon.tol
    x = np.asarray(x, dtype=float)
    V = polygon.vertices
    n = polygon.n
    theta = np.empty(n)
    cross = np.empty((n, 3))
    for i in range(n):
        theta[i] = angle_between(x, V[i])
        if theta[i] <= tol.angle or theta[i] >= np.pi - tol.angle:
            raise AngleDegenerate(f"x is aligned with vertex {i} (theta = {theta[i]:.3e})")
        cross[i] = normalize(np.cross(x, V[i]), tol)
    alpha = np.array([angle_between(cross[i], cross[(i + 1) % n]) for i in range(n)])
    return AngleCache(theta=theta, alpha=alpha)


def _tan_half(alpha: np.ndarray, tol: Tolerances) -> np.ndarray:
    # sin a / (1 + cos a) avoids cancellation near a = 0; near a = pi the
    # tangent genuinely blows up and we refuse to evaluate.
    if np.any(alpha >= np.pi - tol.angle):
        raise AlphaNearPi("some alpha is too close to pi for the closed form")
    return np.sin(alpha) / (1.0 + np.cos(alpha))


def closed_form_mv_weights(
    polygon: SphericalPolygon, x, tol: Tolerances | None = None
) -> tuple[np.ndarray, float]:
    """Closed-form mean value weights (omega, denom) for interior x.

    omega_i = pi (tan(alpha_i/2) + tan(alpha_{i-1}/2)) / (2 sin theta_i)
    denom   = pi/2 * sum_i cot(theta_i) (tan(alpha_i/2) + tan(alpha_{i-1}/2))

    The spherical coordinates follow as psi_i = omega_i / denom and agree
    with the generic polyhedral mean value pipeline.
    """
    tol = tol or polygon.tol
    cache = angles(polygon, x, tol)
    t = _tan_half(cache.alpha, tol)
    pair = t + np.roll(t, 1)                       # tan(a_i/2) + tan(a_{i-1}/2)
    omega = np.pi * pair / (2.0 * np.sin(cache.theta))
    denom = float(np.pi / 2.0 * np.sum(pair / np.tan(cache.theta)))
    return omega, denom


def _kronecker(n: int, j: int, method: str, loc: PointLocation) -> CoordinateVector:
    values = np.zeros(n)
    values[j] = 1.0
    return CoordinateVector(values=values, method=method, location=loc)


def _edge_vector(polygon: SphericalPolygon, loc: PointLocation, method: str) -> CoordinateVector:
    values = np.zeros(polygon.n)
    values[loc.index] = loc.a
    values[(loc.index + 1) % polygon.n] = loc.b
    return CoordinateVector(values=values, method=method, location=loc)


def _debug_edge_check(polygon: SphericalPolygon, x, loc: PointLocation) -> None:
    """Assert the Gram edge solution equals the boundary limit of the 3D
    construction, via planar barycentric coordinates of the origin in the
    triangle (-x, v_j, v_{j+1})."""
    vj, vk = polygon.edge(loc.index)
    base = -np.asarray(x, dtype=float)
    u, v = vj - base, vk - base
    g11, g12, g22 = np.dot(u, u), np.dot(u, v), np.dot(v, v)
    r1, r2 = np.dot(-base, u), np.dot(-base, v)
    det = g11 * g22 - g12 * g12
    lam2 = (r1 * g22 - r2 * g12) / det
    lam3 = (r2 * g11 - r1 * g12) / det
    lam1 = 1.0 - lam2 - lam3
    if abs(lam2 / lam1 - loc.a) > 1e-10 or abs(lam3 / lam1 - loc.b) > 1e-10:
        raise AssertionError(
            "edge coefficients disagree with the planar boundary limit: "
            f"({lam2 / lam1}, {lam3 / lam1}) vs ({loc.a}, {loc.b})"
        )


def _interior_quotient(
    phi: np.ndarray, n: int, method: str, loc: PointLocation, tol: Tolerances
) -> CoordinateVector:
    denom = float(phi[n + 1] - phi[n])
    if denom <= tol.denom:
        raise NonPositiveDenominator(
            f"phi[-x] - phi[x] = {denom:.3e} <= {tol.denom}; invalid input or broken backend"
        )
    return CoordinateVector(values=phi[:n] / denom, method=method, location=loc, denom=denom)


def spherical_coords(
    polygon: SphericalPolygon,
    x,
    backend: str = "MV",
    *,
    closed_form: bool = False,
    debug: bool = False,
    tol: Tolerances | None = None,
) -> CoordinateVector:
    """Spherical barycentric coordinates of x with the given backend.

    backend "MV" (mean value, any simple polygon) or "WC" (rational
    polar-dual weights, convex polygons only).  With closed_form=True the
    mean value interior case uses the trigonometric closed form instead of
    assembling the polyhedron; boundary cases are identical either way.
    """
    tol = tol or polygon.tol
    x = normalize(x, tol)
    if backend == "WC" and not polygon.convex:
        raise NotConvexForWC("the polar-dual backend requires a convex polygon")
    if backend != "MV" and closed_form:
        raise ValueError("the closed form exists only for the mean value backend")
    method = {"MV": "NEW_MV", "WC": "NEW_WC"}[backend]
    if closed_form:
        method = "NEW_MV_CLOSED"

    loc = locate_point(polygon, x, tol)
    if loc.kind == "vertex":
        return _kronecker(polygon.n, loc.index, method, loc)
    if loc.kind == "edge":
        if debug:
            _debug_edge_check(polygon, x, loc)
        return _edge_vector(polygon, loc, method)
    if loc.kind == "exterior":
        raise ExteriorPoint("x lies outside the polygon")

    if closed_form:
        omega, denom = closed_form_mv_weights(polygon, x, tol)
        if denom <= tol.denom:
            raise NonPositiveDenominator(f"closed-form denominator {denom:.3e} <= {tol.denom}")
        return CoordinateVector(values=omega / denom, method=method, location=loc, denom=denom)

    q = build_q(polygon, x, tol)
    # The bipyramid is star-shaped about the origin but frequently not
    # convex even over a convex polygon, so the polar-dual backend runs in
    # its relaxed mode here; the quotient only needs linear precision of
    # phi at the origin, which that mode preserves.
    phi = coords_at_origin(q, backend, tol=tol, require_convex=False)
    return _interior_quotient(phi, polygon.n, method, loc, tol)


def extended_spherical_coords(
    ring, x, backend: str = "MV", tol: Tolerances = DEFAULT_TOL
) -> CoordinateVector:
    """Evaluation mode for configurations outside the default contracts.

    Accepts a raw unit-vector ring (no hemisphere or orientation
    validation) and skips the interior check; the origin-in-kernel
    certificate on the polyhedron is still enforced.  Returns the quotient
    coordinates with location kind "extended"."""
    ring = np.array([normalize(v, tol) for v in np.asarray(ring, dtype=float)])
    x = normalize(x, tol)
    q = build_ring_q(ring, x, tol)
    phi = coords_at_origin(q, backend, tol=tol, require_convex=False)
    loc = PointLocation(kind="extended")
    cv = _interior_quotient(phi, len(ring), {"MV": "NEW_MV", "WC": "NEW_WC"}[backend], loc, tol)
    return cv


def origin_coords_on_ring(ring, x, backend: str = "MV", tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """3D barycentric coordinates of the origin in the polyhedron over a raw
    ring (length n+2); the finite object the construction always produces,
    even when the spherical quotient degenerates (e.g. all vertices on a
    great circle, where phi[-x] = phi[x] identically)."""
    ring = np.array([normalize(v, tol) for v in np.asarray(ring, dtype=float)])
    q = build_ring_q(ring, normalize(x, tol), tol)
    return coords_at_origin(q, backend, tol=tol, require_convex=False)
