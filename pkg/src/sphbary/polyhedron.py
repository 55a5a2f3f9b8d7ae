"""The bipyramid-style polyhedron over a spherical polygon and two families
of 3D generalized barycentric coordinates evaluated at a point inside it.

Given a polygon ring v_1..v_n and an interior direction x, the polyhedron
has vertex list [v_1, ..., v_n, x, -x] and 2n triangular faces: an upper
fan (x, v_i, v_{i+1}) and a lower fan (-x, v_{i+1}, v_i).  With the ring
anti-clockwise, all face normals point away from the origin, and the origin
lies in the kernel (it sees every face from the inner side) whenever every
face plane keeps a strictly positive distance from it.

Two weight backends are provided:

* mean value weights: per-face angle sums divided by the distance to each
  vertex (valid whenever the evaluation point is in the kernel),
* rational polar-dual weights: per-vertex fans of determinants of the dual
  points n_f / <n_f, y_f - at> (valid on convex polyhedra).

Both produce raw weights w with sum(w_i * (p_i - at)) = 0; normalizing by
sum(w) gives the 3D barycentric coordinates of the evaluation point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateTriangle,
    FaceThroughPoint,
    KernelViolation,
    NotConvex,
    NotInterior,
    PointOnVertexOrAntipode,
)
from .geom import DEFAULT_TOL, SphericalPolygon, Tolerances, angle_between, locate_point, normalize

__all__ = [
    "PolyhedronQ",
    "Weights3D",
    "build_q",
    "build_ring_q",
    "is_convex",
    "mv_weights",
    "wachspress_weights",
    "coords_at_origin",
]

ORIGIN = np.zeros(3)


@dataclass(frozen=True)
class PolyhedronQ:
    """Closed oriented triangulated polyhedron [v_1..v_n, x, -x].

    vertices  : (n+2, 3); rows 0..n-1 are the ring, row n is x, row n+1 is -x
    faces     : (2n, 3) int; faces[i] = (n, i, i+1) upper, (n+1, i+1, i) lower
    kernel_ok : True iff the origin is strictly inside every face plane
    """

    vertices: np.ndarray
    faces: np.ndarray
    kernel_ok: bool
    tol: Tolerances = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        self.vertices.setflags(write=False)
        self.faces.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.vertices) - 2

    @property
    def x(self) -> np.ndarray:
        return self.vertices[self.n]

    def face_normals(self, unit: bool = True) -> np.ndarray:
        a = self.vertices[self.faces[:, 0]]
        b = self.vertices[self.faces[:, 1]]
        c = self.vertices[self.faces[:, 2]]
        nrm = np.cross(b - a, c - a)
        if unit:
            nrm = nrm / np.linalg.norm(nrm, axis=1)[:, None]
        return nrm


@dataclass(frozen=True)
class Weights3D:
    """Raw non-normalized vertex weights for one backend ("MV" or "WC")."""

    w: np.ndarray
    backend: str

    def normalized(self) -> np.ndarray:
        return self.w / float(self.w.sum())


def build_ring_q(ring: np.ndarray, x, tol: Tolerances = DEFAULT_TOL) -> PolyhedronQ:
    """Assemble the polyhedron from a raw unit-vector ring, skipping polygon
    validation.  Used by the extended evaluation mode where the ring may not
    bound a valid hemisphere polygon (e.g. all vertices on a great circle).
    """
    ring = np.asarray(ring, dtype=float)
    x = normalize(x, tol)
    n = len(ring)
    for i, v in enumerate(ring):
        if angle_between(x, v) <= tol.angle or angle_between(-x, v) <= tol.angle:
            raise PointOnVertexOrAntipode(f"x or -x coincides with vertex {i}")
    vertices = np.vstack([ring, x, -x])
    upper = np.column_stack([np.full(n, n), np.arange(n), (np.arange(n) + 1) % n])
    lower = np.column_stack([np.full(n, n + 1), (np.arange(n) + 1) % n, np.arange(n)])
    faces = np.vstack([upper, lower]).astype(np.intp)

    a = vertices[faces[:, 0]]
    b = vertices[faces[:, 1]]
    c = vertices[faces[:, 2]]
    nrm = np.cross(b - a, c - a)
    norms = np.linalg.norm(nrm, axis=1)
    if np.any(norms <= tol.unit):
        kernel_ok = False
    else:
        dist = np.einsum("ij,ij->i", nrm / norms[:, None], a)
        kernel_ok = bool(np.all(dist > tol.geom))
    return PolyhedronQ(vertices=vertices, faces=faces, kernel_ok=kernel_ok, tol=tol)


def build_q(polygon: SphericalPolygon, x, tol: Tolerances | None = None) -> PolyhedronQ:
    """Validated construction: x must be strictly interior to the polygon."""
    tol = tol or polygon.tol
    x = normalize(x, tol)
    loc = locate_point(polygon, x, tol)
    if loc.kind == "vertex":
        raise PointOnVertexOrAntipode(f"x coincides with vertex {loc.index}")
    if not loc.is_interior:
        raise NotInterior(f"x is {loc} of the polygon, expected interior")
    return build_ring_q(polygon.vertices, x, tol)


def _check_kernel(q: PolyhedronQ, at: np.ndarray, tol: Tolerances) -> None:
    a = q.vertices[q.faces[:, 0]]
    nrm = q.face_normals(unit=True)
    dist = np.einsum("ij,ij->i", nrm, a - at)
    if np.any(dist <= tol.geom):
        raise KernelViolation(
            f"evaluation point is not strictly inside every face plane (min distance {dist.min():.3e})"
        )


def mv_weights(q: PolyhedronQ, at=ORIGIN, tol: Tolerances | None = None) -> Weights3D:
    """Mean value weights of `at` with respect to q's vertices.

    For each face (i, j, k), taken in its oriented order, the contribution
    to the distinguished vertex i is

        mu = (b_jk + b_ij <n_ij, n_jk> + b_ki <n_ki, n_jk>) / (2 <e_i, n_jk>)

    where e_i is the unit vector from `at` to vertex i, b_rs the angle
    between e_r and e_s and n_rs the unit normal of span(e_r, e_s).  The
    weight of a vertex is the sum of its mu over incident faces divided by
    its distance from `at`.
    """
    tol = tol or q.tol
    at = np.asarray(at, dtype=float)
    if not q.kernel_ok:
        raise KernelViolation("polyhedron failed the origin-in-kernel certificate")
    if not np.array_equal(at, ORIGIN):
        _check_kernel(q, at, tol)

    u = q.vertices - at
    r = np.linalg.norm(u, axis=1)
    e = u / r[:, None]

    accum = np.zeros(len(q.vertices))
    F = q.faces
    for rot in range(3):
        i = F[:, rot]
        j = F[:, (rot + 1) % 3]
        k = F[:, (rot + 2) % 3]
        ei, ej, ek = e[i], e[j], e[k]

        def unit_cross(p, s):
            cr = np.cross(p, s)
            nn = np.linalg.norm(cr, axis=1)
            if np.any(nn <= tol.unit):
                raise DegenerateTriangle("two rays of a face are collinear")
            return cr / nn[:, None], nn

        n_ij, s_ij = unit_cross(ei, ej)
        n_jk, s_jk = unit_cross(ej, ek)
        n_ki, s_ki = unit_cross(ek, ei)
        b_ij = np.arctan2(s_ij, np.einsum("ij,ij->i", ei, ej))
        b_jk = np.arctan2(s_jk, np.einsum("ij,ij->i", ej, ek))
        b_ki = np.arctan2(s_ki, np.einsum("ij,ij->i", ek, ei))

        denom = 2.0 * np.einsum("ij,ij->i", ei, n_jk)
        if np.any(np.abs(denom) <= tol.unit):
            raise DegenerateTriangle("face is flat as seen from the evaluation point")
        mu = (
            b_jk
            + b_ij * np.einsum("ij,ij->i", n_ij, n_jk)
            + b_ki * np.einsum("ij,ij->i", n_ki, n_jk)
        ) / denom
        np.add.at(accum, i, mu)

    return Weights3D(w=accum / r, backend="MV")


def _faces_around_vertex(q: PolyhedronQ, p: int) -> list[int]:
    """Indices of faces incident to vertex p, anti-clockwise viewed from
    outside.  Each incident face is rotated to read (p, s, t); the successor
    of (p, s, t) is the face reading (p, t, u)."""
    start_of = {}
    for fi, face in enumerate(q.faces):
        if p not in face:
            continue
        pos = int(np.where(face == p)[0][0])
        s = int(face[(pos + 1) % 3])
        t = int(face[(pos + 2) % 3])
        start_of[s] = (fi, t)
    s0 = next(iter(start_of))
    order = []
    s = s0
    for _ in range(len(start_of)):
        fi, t = start_of[s]
        order.append(fi)
        s = t
    if s != s0:
        raise DegenerateTriangle(f"faces around vertex {p} do not close a fan")
    return order


def is_convex(q: PolyhedronQ, tol: Tolerances | None = None) -> bool:
    """True iff every dihedral angle of q is convex: for each pair of faces
    sharing an edge, the apex of each lies weakly behind the other's plane."""
    tol = tol or q.tol
    V = q.vertices
    normals = q.face_normals(unit=True)
    neighbor = {}
    for fi, face in enumerate(q.faces):
        for rot in range(3):
            a, b = int(face[rot]), int(face[(rot + 1) % 3])
            neighbor[(a, b)] = (fi, int(face[(rot + 2) % 3]))
    for (a, b), (fi, _) in neighbor.items():
        _, apex = neighbor[(b, a)]
        height = float(np.dot(normals[fi], V[apex] - V[q.faces[fi, 0]]))
        if height > tol.geom:
            return False
    return True


def wachspress_weights(
    q: PolyhedronQ, at=ORIGIN, tol: Tolerances | None = None, require_convex: bool = True
) -> Weights3D:
    """Rational polar-dual weights of `at`.

    Every face f contributes a dual point p_f = n_f / <n_f, y_f - at>; the
    weight of a vertex is the fan determinant sum of the dual points of its
    incident faces, i.e. twice the vector area of its dual cell.

    By default this is restricted to convex polyhedra (NotConvex otherwise),
    where all weights are positive.  With require_convex=False the same
    formula is evaluated whenever every face plane keeps `at` strictly on
    its inner side; weights may then change sign, but the linear-precision
    identity sum(w_p (p - at)) = 0 survives, because the per-vertex dual
    cells pair each oriented dual edge twice with opposite signs and the
    vector areas telescope to zero.  The bipyramid over a convex spherical
    polygon is very often non-convex in the strict dihedral sense, so the
    spherical quotient uses the relaxed mode.
    """
    tol = tol or q.tol
    at = np.asarray(at, dtype=float)

    V = q.vertices
    F = q.faces
    normals = q.face_normals(unit=True)
    offsets = np.einsum("ij,ij->i", normals, V[F[:, 0]] - at)
    if np.any(offsets <= tol.unit):
        raise FaceThroughPoint("a face plane passes through the evaluation point")
    if require_convex and not is_convex(q, tol):
        raise NotConvex("polyhedron has a reflex dihedral angle")

    dual = normals / offsets[:, None]
    w = np.zeros(len(V))
    for p in range(len(V)):
        ring = _faces_around_vertex(q, p)
        d0 = dual[ring[0]]
        for j in range(1, len(ring) - 1):
            w[p] += float(np.dot(d0, np.cross(dual[ring[j]], dual[ring[j + 1]])))
    return Weights3D(w=w, backend="WC")


def coords_at_origin(
    q: PolyhedronQ,
    backend: str = "MV",
    at=ORIGIN,
    tol: Tolerances | None = None,
    require_convex: bool = True,
) -> np.ndarray:
    """Normalized 3D barycentric coordinates phi of `at` in q (length n+2).

    Satisfies sum(phi) = 1 and sum(phi_i * p_i) = at up to roundoff.
    """
    if backend == "MV":
        weights = mv_weights(q, at, tol)
    elif backend == "WC":
        weights = wachspress_weights(q, at, tol, require_convex=require_convex)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    total = float(weights.w.sum())
    if total <= 0.0:
        raise KernelViolation("weight sum is not positive; configuration invalid for this backend")
    return weights.w / total
