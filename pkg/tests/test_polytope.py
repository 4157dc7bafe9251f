import json
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.spatial import ConvexHull

from conftest import random_rotation
from spherevol.constructions import (
    cross_polytope, cyclic_trig, optimal_dplus3, p4, random_inscribed, regular_polygon,
    regular_simplex_polytope,
)
from spherevol.errors import DimensionError, UnsupportedError
from spherevol.polytope import (
    InscribedPolytope, distance_profile, edge_graph, edges, enumerate_facets, hull_facets, is_simplicial,
    signed_volume, triangulate_boundary, triangulate_facets, volume,
)

SQUARE = [[1, 0], [0, 1], [-1, 0], [0, -1]]


def square_pyramid(angles=np.arange(4) * 90.0):
    h = -0.5
    r = np.sqrt(1 - h * h)
    t = np.radians(angles)
    base = [[r * np.cos(a), r * np.sin(a), h] for a in t]
    return InscribedPolytope([[0, 0, 1]] + base)


def shoelace(points):
    p = np.asarray(points)
    order = np.argsort(np.arctan2(p[:, 1], p[:, 0]))
    x, y = p[order, 0], p[order, 1]
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def divergence_volume(p):
    """Sum over facets of offset * area / 3, areas from the facet polygon directly."""
    total = 0.0
    v = p.vertices
    for f in p.facets:
        q = v[list(f.vertex_indices)]
        c = q.mean(axis=0)
        u = q[0] - c
        u /= np.linalg.norm(u)
        w = np.cross(f.outward_normal, u)
        ang = np.arctan2((q - c) @ w, (q - c) @ u)
        q = q[np.argsort(ang)]
        area = 0.5 * np.linalg.norm(sum(np.cross(q[i], q[(i + 1) % len(q)]) for i in range(len(q))))
        total += f.offset * area / 3
    return total


class TestValidation:
    def test_off_sphere(self):
        with pytest.raises(ValueError, match="not on the unit sphere"):
            InscribedPolytope([[1, 0], [0, 1], [-1, 0], [0, -1.1]])

    def test_normalize(self):
        p = InscribedPolytope([[2, 0], [0, 3], [-1, 0], [0, -5]], normalize=True)
        np.testing.assert_allclose(np.linalg.norm(p.vertices, axis=1), 1.0)

    def test_too_few_vertices(self):
        with pytest.raises(DimensionError):
            InscribedPolytope([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def test_coincident(self):
        with pytest.raises(ValueError, match="coincide"):
            InscribedPolytope([[1, 0], [0, 1], [-1, 0], [1, 0]])

    def test_degenerate(self):
        with pytest.raises(DimensionError):
            InscribedPolytope([[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0]])

    def test_dim_mismatch(self):
        with pytest.raises(DimensionError):
            InscribedPolytope(SQUARE, dim=3)

    def test_non_finite(self):
        with pytest.raises(ValueError):
            InscribedPolytope([[1, 0], [0, np.nan], [-1, 0]])

    def test_vertices_read_only(self):
        p = InscribedPolytope(SQUARE)
        with pytest.raises(ValueError):
            p.vertices[0, 0] = 3.0

    def test_json_roundtrip_is_exact(self):
        p = cyclic_trig(4, 7)
        q = InscribedPolytope.from_json(p.to_json())
        assert np.array_equal(p.vertices, q.vertices)

    @pytest.mark.parametrize("doc, field", [
        ({"vertices": SQUARE}, "dim"),
        ({"dim": 2}, "vertices"),
        ({"dim": 2, "vertices": [[1, 0], [0, 1, 0]]}, "vertices[1]"),
        ({"dim": 2, "vertices": [[1, 0], [0, "a"]]}, "vertices[1][1]"),
        ({"dim": "2", "vertices": SQUARE}, "dim"),
    ])
    def test_from_dict_reports_field(self, doc, field):
        with pytest.raises(ValueError, match=field.replace("[", r"\[").replace("]", r"\]")):
            InscribedPolytope.from_dict(doc)


class TestFacets:
    def test_tetrahedron(self):
        f = enumerate_facets(regular_simplex_polytope(3))
        assert len(f) == 4 and all(len(x.vertex_indices) == 3 for x in f)

    def test_octahedron(self):
        f = enumerate_facets(cross_polytope(3))
        assert len(f) == 8 and all(x.is_simplex for x in f)

    def test_square(self):
        assert len(enumerate_facets(InscribedPolytope(SQUARE))) == 4

    def test_facet_invariants(self):
        for p in (p4(), cyclic_trig(6, 9), square_pyramid()):
            v = p.vertices
            for f in p.facets:
                assert np.linalg.norm(f.outward_normal) == pytest.approx(1.0, abs=1e-12)
                h = v @ f.outward_normal
                on = np.zeros(p.n, bool)
                on[list(f.vertex_indices)] = True
                assert np.all(np.abs(h[on] - f.offset) <= 1e-9)
                assert np.all(h[~on] < f.offset - 1e-9)
                assert f.offset > 0

    def test_matches_qhull(self):
        rng = np.random.default_rng(0)
        for d, n in [(3, 8), (4, 9), (5, 9)]:
            p = random_inscribed(d, n, rng)
            ours = {frozenset(f.vertex_indices) for f in p.facets}
            qh = {frozenset(s) for s in ConvexHull(p.vertices).simplices}
            assert ours == qh

    @given(st.integers(0, 10**6))
    def test_order_independent(self, seed):
        rng = np.random.default_rng(seed)
        p = random_inscribed(3, 7, rng)
        perm = rng.permutation(p.n)
        q = p.reordered(perm)
        a = {frozenset(f.vertex_indices) for f in p.facets}
        b = {frozenset(int(perm[i]) for i in f.vertex_indices) for f in q.facets}
        assert a == b


class TestTriangulation:
    def test_simplex(self):
        c = triangulate_boundary(regular_simplex_polytope(4))
        assert len(c) == 5
        assert np.all(c.determinants() > 0)

    def test_square(self):
        c = triangulate_boundary(InscribedPolytope(SQUARE))
        assert len(c) == 4 and np.all(c.determinants() > 0)

    def test_p4_count_equals_facets(self):
        p = p4()
        assert is_simplicial(p)
        assert len(p.complex) == len(p.facets)

    @pytest.mark.parametrize("make", [square_pyramid, lambda: optimal_dplus3(5),
                                      lambda: cross_polytope(4), lambda: cyclic_trig(6, 9)])
    def test_positive_determinants_and_covering(self, make):
        p = make()
        c = p.complex
        assert np.all(c.determinants() > 0)
        assert set(c.facet_of.tolist()) == set(range(len(p.facets)))
        for s, f in zip(c.simplices, c.facet_of):
            assert set(s.tolist()) <= set(p.facets[f].vertex_indices)

    def test_two_triangulations_same_volume(self):
        from spherevol.constructions import remark54_3polytope
        # lexicographic min and max of this base are adjacent, so the diagonals differ
        skew = square_pyramid([-30.0, 30.0, 170.0, 200.0])
        a, b = triangulate_boundary(skew), triangulate_boundary(skew, reverse=True)
        assert {tuple(sorted(s)) for s in a.simplices} != {tuple(sorted(s)) for s in b.simplices}
        for p in (skew, square_pyramid(), remark54_3polytope(), optimal_dplus3(5)):
            a = triangulate_boundary(p)
            b = triangulate_boundary(p, reverse=True)
            assert volume(p, a) == pytest.approx(volume(p, b), abs=1e-12)

    def test_signed_volume_with_origin_outside(self):
        # a cap-heavy triangle: the origin lies outside, signed volume still equals the area
        t = np.array([0.3, 1.2, 2.1])
        pts = np.c_[np.cos(t), np.sin(t)]
        simp, _ = triangulate_facets(pts, hull_facets(pts))
        assert signed_volume(pts, simp) == pytest.approx(shoelace(pts), abs=1e-12)
        with pytest.raises(UnsupportedError):
            volume(InscribedPolytope(pts))


class TestVolume:
    def test_octahedron(self):
        assert cross_polytope(3).volume() == pytest.approx(4 / 3, abs=1e-12)

    def test_square(self):
        assert InscribedPolytope(SQUARE).volume() == pytest.approx(2.0, abs=1e-12)

    def test_p4(self):
        assert p4().volume() == pytest.approx(np.sqrt(3) / 4, abs=1e-12)

    def test_segment(self):
        assert InscribedPolytope([[1.0], [-1.0]]).volume() == 2.0

    @given(st.integers(0, 10**6), st.integers(3, 8))
    def test_shoelace_oracle(self, seed, n):
        p = random_inscribed(2, n, np.random.default_rng(seed))
        try:
            v = p.volume()
        except UnsupportedError:
            return
        assert v == pytest.approx(shoelace(p.vertices), abs=1e-9)

    @given(st.integers(0, 10**6), st.integers(4, 8))
    def test_divergence_oracle(self, seed, n):
        p = random_inscribed(3, n, np.random.default_rng(seed))
        try:
            v = p.volume()
        except UnsupportedError:
            return
        assert v == pytest.approx(divergence_volume(p), abs=1e-9)

    def test_divergence_oracle_non_simplicial(self):
        p = square_pyramid()
        assert p.volume() == pytest.approx(divergence_volume(p), abs=1e-12)

    @given(st.integers(0, 10**6), st.sampled_from([(4, 7), (5, 8), (6, 9)]))
    def test_qhull_oracle_higher_dims(self, seed, dn):
        p = random_inscribed(*dn, np.random.default_rng(seed))
        try:
            v = p.volume()
        except UnsupportedError:
            return
        assert v == pytest.approx(ConvexHull(p.vertices).volume, rel=1e-9)

    @given(st.integers(0, 10**6))
    def test_rotation_invariant(self, seed):
        rng = np.random.default_rng(seed)
        p = cyclic_trig(4, 7)
        assert p.transformed(random_rotation(rng, 4)).volume() == pytest.approx(p.volume(), abs=1e-12)


class TestCombinatorics:
    def test_pyramid_not_simplicial(self):
        assert not is_simplicial(square_pyramid())

    def test_cross4_simplicial(self):
        assert is_simplicial(cross_polytope(4))

    def test_c47_simplicial(self):
        assert is_simplicial(cyclic_trig(4, 7))

    def test_simplex_graph_complete(self):
        g = edge_graph(regular_simplex_polytope(4))
        assert all(len(nb) == 4 for nb in g.values())

    def test_octahedron_edges(self):
        e = edges(cross_polytope(3))
        assert len(e) == 12
        # antipodes are ordered consecutively
        assert all((2 * k, 2 * k + 1) not in e for k in range(3))

    def test_square_cycle(self):
        g = edge_graph(InscribedPolytope(SQUARE))
        assert g[0] == {1, 3} and g[2] == {1, 3}

    def test_pyramid_base_diagonals_not_edges(self):
        e = edges(square_pyramid())
        assert (1, 3) not in e and (2, 4) not in e and len(e) == 8

    def test_edges_match_brute_force_faces(self):
        # two vertices span an edge iff some facet contains them and they are a face of it
        p = cyclic_trig(4, 7)
        assert len(edges(p)) == 21  # neighbourly: every pair is an edge


class TestDistanceProfile:
    def test_c47(self):
        assert all(s.spread <= 1e-12 for s in distance_profile(cyclic_trig(4, 7)))

    def test_pentagon(self):
        prof = distance_profile(regular_polygon(5))
        assert [s.shift for s in prof] == [1, 2]
        assert all(s.spread <= 1e-12 for s in prof)

    def test_random(self):
        p = random_inscribed(4, 7, np.random.default_rng(1))
        assert max(s.spread for s in distance_profile(p)) > 1e-3

    def test_bad_ordering(self):
        with pytest.raises(ValueError):
            distance_profile(regular_polygon(5), [0, 1, 2, 3, 3])
