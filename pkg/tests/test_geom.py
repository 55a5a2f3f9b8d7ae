"""Vector algebra, polygon validation and point classification."""

import numpy as np
import pytest

import sphbary as sb
from sphbary.errors import (
    DegenerateEdge,
    NotInHemisphere,
    TooFewVertices,
    WrongOrientation,
    ZeroVector,
)
from sphbary.geom import find_hemisphere_witness, winding_angle

from conftest import random_rotation

E1, E2, E3 = np.eye(3)


class TestNormalize:
    def test_scaling(self):
        np.testing.assert_allclose(sb.normalize([2, 0, 0]), E1)

    def test_diagonal(self):
        np.testing.assert_allclose(sb.normalize([1, 1, 1]), np.full(3, 1 / np.sqrt(3)))

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            sb.normalize([0.0, 0.0, 0.0])

    def test_idempotent(self, rng):
        for _ in range(50):
            v = rng.normal(size=3) * rng.uniform(0.1, 100)
            once = sb.normalize(v)
            assert np.max(np.abs(sb.normalize(once) - once)) <= 1e-15


class TestAngleBetween:
    @pytest.mark.parametrize(
        "a,b,expected",
        [
            (E1, E2, np.pi / 2),
            (E1, E1, 0.0),
            (E1, np.array([1, 1, 0]) / np.sqrt(2), np.pi / 4),
        ],
    )
    def test_analytic(self, a, b, expected):
        assert sb.angle_between(a, b) == pytest.approx(expected, abs=1e-15)

    def test_symmetry_and_rotation_invariance(self, rng):
        for _ in range(50):
            a = sb.normalize(rng.normal(size=3))
            b = sb.normalize(rng.normal(size=3))
            R = random_rotation(rng)
            assert sb.angle_between(a, b) == pytest.approx(sb.angle_between(b, a), abs=1e-13)
            assert sb.angle_between(R @ a, R @ b) == pytest.approx(sb.angle_between(a, b), abs=1e-12)

    def test_accurate_near_zero(self):
        b = sb.normalize([1.0, 1e-9, 0.0])
        assert sb.angle_between(E1, b) == pytest.approx(1e-9, rel=1e-6)


class TestTripleProduct:
    def test_right_handed_basis(self):
        assert sb.triple_product(E1, E2, E3) == 1.0

    def test_repeated_vector(self):
        assert sb.triple_product(E1, E1, E3) == 0.0

    def test_expansion(self):
        x = np.array([1, 1, 1]) / np.sqrt(3)
        assert sb.triple_product(E1, E2, x) == pytest.approx(1 / np.sqrt(3), abs=1e-15)


class TestValidatePolygon:
    def test_octant(self, octant):
        assert octant.n == 3
        assert octant.convex
        np.testing.assert_allclose(octant.witness, np.full(3, 1 / np.sqrt(3)), atol=1e-12)
        assert np.all(octant.vertices @ octant.witness > 0)

    def test_reversed_ring(self):
        with pytest.raises(WrongOrientation):
            sb.validate_polygon([E1, E3, E2])

    def test_antipodal_pair(self):
        with pytest.raises(NotInHemisphere):
            sb.validate_polygon([E1, -E1, E2])

    def test_duplicate_vertex(self):
        with pytest.raises(DegenerateEdge):
            sb.validate_polygon([E1, E1, E2])

    def test_too_few(self):
        with pytest.raises(TooFewVertices):
            sb.validate_polygon([E1, E2])

    def test_nonconvex_flagged(self):
        polygon = sb.random_polygon(4, 0.9, seed=7, mode="nonconvex")
        assert not polygon.convex
        trips = [
            sb.triple_product(polygon.vertex(i), polygon.vertex(i + 1), polygon.vertex(i + 2))
            for i in range(polygon.n)
        ]
        assert min(trips) < -1e-9

    def test_witness_holds_on_random_corpus(self, rng):
        for k in range(25):
            polygon = sb.random_polygon(int(rng.integers(3, 13)), 1.0, seed=k)
            assert np.all(polygon.vertices @ polygon.witness > 0)


class TestWitnessSearch:
    def test_sum_fallback(self):
        # Clustered vertices plus one straggler: the vertex-sum direction
        # fails, the exact search still finds a witness.
        cluster = [sb.normalize([1.0, d, 0.0]) for d in (-0.02, 0.0, 0.02)]
        straggler = np.array([np.cos(1.74), np.sin(1.74), 0.0])   # ~99.7 degrees
        vertices = np.array(cluster * 3 + [straggler])
        s = sb.normalize(vertices.sum(axis=0))
        assert np.min(vertices @ s) <= 0.0
        w = find_hemisphere_witness(vertices)
        assert np.min(vertices @ w) > 0.0

    def test_no_witness_for_spread_ring(self):
        azim = np.linspace(0, 2 * np.pi, 6, endpoint=False)
        equator = np.column_stack([np.cos(azim), np.sin(azim), np.zeros(6)])
        with pytest.raises(NotInHemisphere):
            find_hemisphere_witness(equator)


class TestLocatePoint:
    def test_interior(self, octant):
        assert sb.locate_point(octant, sb.normalize([1, 1, 1])).kind == "interior"

    def test_edge_midpoint(self, octant):
        loc = sb.locate_point(octant, sb.normalize([1, 1, 0]))
        assert loc.kind == "edge"
        assert loc.index == 0
        assert loc.a == pytest.approx(1 / np.sqrt(2), abs=1e-12)
        assert loc.b == pytest.approx(1 / np.sqrt(2), abs=1e-12)

    def test_vertex(self, octant):
        loc = sb.locate_point(octant, E1)
        assert (loc.kind, loc.index) == ("vertex", 0)

    def test_antipode_of_interior(self, octant):
        assert sb.locate_point(octant, -sb.normalize([1, 1, 1])).kind == "exterior"

    def test_vertices_classified_everywhere(self, rng):
        for k in range(10):
            polygon = sb.random_polygon(int(rng.integers(3, 10)), 0.9, seed=100 + k)
            for j in range(polygon.n):
                loc = sb.locate_point(polygon, polygon.vertex(j))
                assert (loc.kind, loc.index) == ("vertex", j)

    def test_rotation_invariance(self, rng):
        polygon = sb.random_polygon(6, 0.8, seed=3)
        x = sb.interior_points(polygon, 1, rng)[0]
        for _ in range(10):
            R = random_rotation(rng)
            rotated = sb.validate_polygon(polygon.vertices @ R.T)
            assert sb.locate_point(rotated, R @ x).kind == "interior"

    def test_edge_coefficients_reconstruct(self, rng):
        for k in range(10):
            polygon = sb.random_polygon(5, 1.0, seed=200 + k)
            j = int(rng.integers(polygon.n))
            vj, vk = polygon.edge(j)
            t = rng.uniform(0.15, 0.85)
            length = sb.angle_between(vj, vk)
            x = (np.sin((1 - t) * length) * vj + np.sin(t * length) * vk) / np.sin(length)
            loc = sb.locate_point(polygon, x)
            assert loc.kind == "edge" and loc.index == j
            assert np.linalg.norm(loc.a * vj + loc.b * vk - x) <= 1e-10
            assert loc.a + loc.b >= 1.0 - 1e-12

    def test_point_near_edge_is_interior(self, octant):
        # 1e-5 inside the first edge: must never be classified on-edge.
        mid = sb.normalize([1, 1, 0])
        pole = sb.normalize(np.cross(E1, E2))
        x = np.cos(1e-5) * mid + np.sin(1e-5) * pole
        assert sb.locate_point(octant, x).kind == "interior"


def test_winding_angle_signs(octant):
    inner = sb.normalize([1, 1, 1])
    assert winding_angle(octant.vertices, inner) == pytest.approx(2 * np.pi, abs=1e-12)
    assert winding_angle(octant.vertices[::-1], inner) == pytest.approx(-2 * np.pi, abs=1e-12)
    outside = sb.normalize([-1, -1, 1])
    assert abs(winding_angle(octant.vertices, outside)) <= 1e-9
