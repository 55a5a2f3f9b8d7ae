"""Polyhedron assembly and the two 3D weight backends."""

import numpy as np
import pytest

import sphbary as sb
from sphbary.errors import (
    DegenerateTriangle,
    KernelViolation,
    NotConvex,
    NotInterior,
    PointOnVertexOrAntipode,
)
from sphbary.polyhedron import PolyhedronQ, build_ring_q, is_convex

from conftest import random_rotation

CENTER = sb.normalize([1, 1, 1])


@pytest.fixture(scope="module")
def octant_q():
    return sb.build_q(sb.octant_triangle(), CENTER)


class TestBuildQ:
    def test_octant_shape(self, octant_q):
        assert octant_q.vertices.shape == (5, 3)
        assert octant_q.faces.shape == (6, 3)
        assert octant_q.kernel_ok

    def test_incidence_counts(self, rng):
        polygon = sb.random_polygon(7, 0.9, seed=11)
        x = sb.interior_points(polygon, 1, rng)[0]
        q = sb.build_q(polygon, x)
        n = polygon.n
        counts = np.bincount(q.faces.ravel(), minlength=n + 2)
        assert np.all(counts[:n] == 4)
        assert counts[n] == n and counts[n + 1] == n

    def test_closed_oriented_manifold(self, octant_q):
        directed = set()
        for face in octant_q.faces:
            for r in range(3):
                edge = (int(face[r]), int(face[(r + 1) % 3]))
                assert edge not in directed
                directed.add(edge)
        assert all((b, a) in directed for (a, b) in directed)

    def test_outward_normals(self, octant_q):
        normals = octant_q.face_normals()
        anchors = octant_q.vertices[octant_q.faces[:, 0]]
        assert np.all(np.einsum("ij,ij->i", normals, anchors) > 0)

    def test_x_on_vertex_rejected(self):
        with pytest.raises(PointOnVertexOrAntipode):
            sb.build_q(sb.octant_triangle(), [1, 0, 0])

    def test_exterior_rejected(self):
        with pytest.raises(NotInterior):
            sb.build_q(sb.octant_triangle(), sb.normalize([-1, -1, -1]))


class TestMeanValueWeights:
    def test_octant_symmetry(self, octant_q):
        w = sb.mv_weights(octant_q).w
        assert w[0] == pytest.approx(w[1], abs=1e-12)
        assert w[1] == pytest.approx(w[2], abs=1e-12)

    def test_octant_linear_precision(self, octant_q):
        w = sb.mv_weights(octant_q).w
        assert np.linalg.norm(w @ octant_q.vertices) <= 1e-10

    def test_matches_closed_form_weights(self, octant_q):
        # Ring weights computed two independent ways: per-face angle sums
        # versus the trigonometric closed form.
        w = sb.mv_weights(octant_q).w
        omega, denom = sb.closed_form_mv_weights(sb.octant_triangle(), CENTER)
        np.testing.assert_allclose(w[:3], omega, atol=1e-9)
        assert w[4] - w[3] == pytest.approx(denom, abs=1e-9)

    def test_kernel_gate(self, octant_q):
        bad = PolyhedronQ(
            vertices=octant_q.vertices.copy(),
            faces=octant_q.faces.copy(),
            kernel_ok=False,
        )
        with pytest.raises(KernelViolation):
            sb.mv_weights(bad)

    def test_degenerate_face_guard(self):
        # A face with two collinear rays from the evaluation point.
        vertices = np.array([[1.0, 0, 0], [2.0, 0, 0], [0, 1.0, 0], [0, 0, 1.0]])
        faces = np.array([[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])
        q = PolyhedronQ(vertices=vertices, faces=faces, kernel_ok=True)
        with pytest.raises(DegenerateTriangle):
            sb.mv_weights(q)

    def test_linear_precision_random(self, rng):
        for k in range(30):
            polygon = sb.random_polygon(int(rng.integers(3, 13)), 1.0, seed=300 + k)
            x = sb.interior_points(polygon, 1, rng)[0]
            q = sb.build_q(polygon, x)
            w = sb.mv_weights(q).w
            assert np.linalg.norm(w @ q.vertices) <= 1e-9

    def test_movable_evaluation_point(self, octant_q):
        at = np.array([0.05, -0.02, 0.04])
        w = sb.mv_weights(octant_q, at=at).w
        assert np.linalg.norm(w @ (octant_q.vertices - at)) <= 1e-9
        outside = 1.2 * sb.normalize([1, 1, 1])
        with pytest.raises(KernelViolation):
            sb.mv_weights(octant_q, at=outside)


def regular_tetrahedron() -> PolyhedronQ:
    vertices = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / np.sqrt(3)
    faces = np.array([[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])
    return PolyhedronQ(vertices=vertices, faces=faces, kernel_ok=True)


class TestWachspressWeights:
    def test_tetrahedron_symmetry(self):
        w = sb.wachspress_weights(regular_tetrahedron()).w
        assert np.all(w > 0)
        np.testing.assert_allclose(w, w[0], rtol=1e-12)

    def test_octant_linear_precision(self, octant_q):
        w = sb.wachspress_weights(octant_q).w
        assert np.all(w > 0)
        assert np.linalg.norm(w @ octant_q.vertices) <= 1e-10

    def test_nonconvex_polyhedron_rejected(self, rng):
        polygon = sb.random_polygon(4, 0.9, seed=7, mode="nonconvex")
        x = sb.interior_points(polygon, 1, rng)[0]
        q = sb.build_q(polygon, x)
        assert not is_convex(q)
        with pytest.raises(NotConvex):
            sb.wachspress_weights(q)

    def test_relaxed_mode_keeps_linear_precision(self, rng):
        # The polar-dual identity sum(w_p p) = 0 survives without convexity.
        hit = 0
        for k in range(40):
            polygon = sb.random_polygon(int(rng.integers(4, 13)), 1.0, seed=400 + k)
            x = sb.interior_points(polygon, 1, rng)[0]
            q = sb.build_q(polygon, x)
            w = sb.wachspress_weights(q, require_convex=False).w
            assert np.linalg.norm(w @ q.vertices) / abs(w.sum()) <= 1e-10
            if not is_convex(q):
                hit += 1
        assert hit > 0   # the sample really exercises non-convex polyhedra


class TestCoordsAtOrigin:
    def test_partition_of_unity(self, octant_q):
        for backend in ("MV", "WC"):
            phi = sb.coords_at_origin(octant_q, backend)
            assert abs(phi.sum() - 1.0) <= 1e-12

    def test_origin_reproduced(self, octant_q):
        for backend in ("MV", "WC"):
            phi = sb.coords_at_origin(octant_q, backend)
            assert np.linalg.norm(phi @ octant_q.vertices) <= 1e-9

    def test_positive_on_convex(self, octant_q):
        phi = sb.coords_at_origin(octant_q, "WC")
        assert np.all(phi > 0)

    def test_rotation_equivariance(self, rng):
        polygon = sb.random_polygon(6, 1.0, seed=5)
        x = sb.interior_points(polygon, 1, rng)[0]
        phi = sb.coords_at_origin(sb.build_q(polygon, x), "MV")
        for _ in range(5):
            R = random_rotation(rng)
            rotated = sb.validate_polygon(polygon.vertices @ R.T)
            phi_r = sb.coords_at_origin(sb.build_q(rotated, R @ x), "MV")
            np.testing.assert_allclose(phi_r, phi, atol=1e-9)

    def test_facet_restriction_limit(self):
        # As x drifts toward an edge, the 3D coordinates of the origin
        # concentrate on that edge's vertices and the antipode.
        polygon = sb.random_polygon(6, 1.0, seed=21)
        j = 2
        vj, vk = polygon.edge(j)
        length = sb.angle_between(vj, vk)
        mid = (np.sin(0.5 * length) * vj + np.sin(0.5 * length) * vk) / np.sin(length)
        pole = sb.normalize(np.cross(vj, vk))
        others_prev = None
        n = polygon.n
        keep = {j, (j + 1) % n, n + 1}
        for t in (1e-3, 1e-4, 1e-5):
            x = np.cos(t) * mid + np.sin(t) * pole
            phi = sb.coords_at_origin(sb.build_q(polygon, x), "MV")
            others = max(phi[i] for i in range(n + 2) if i not in keep)
            if others_prev is not None:
                assert others <= 0.5 * others_prev    # clearly decaying with t
            others_prev = others
        assert others_prev <= 1e-3


def test_build_ring_q_skips_validation():
    ring, x = sb.great_circle_ring()
    q = build_ring_q(ring, x)
    assert q.kernel_ok
    assert q.faces.shape == (10, 3)
