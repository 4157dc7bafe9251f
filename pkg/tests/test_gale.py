from itertools import combinations

import numpy as np
import pytest

from conftest import brute_force_face, few_vertex_constructions
from spherevol.constructions import cyclic_trig, optimal_dplus2, optimal_dplus3, regular_simplex_polytope
from spherevol.errors import UnsupportedError
from spherevol.gale import (
    GaleDiagram, contract_diagram, diagram_predicates, from_points, gale_transform, is_face,
    origin_in_relint, validate_diagram, vertex_matrix,
)
from spherevol.polytope import InscribedPolytope, is_simplicial

SQUARE = InscribedPolytope([[1, 0], [0, 1], [-1, 0], [0, -1]])
CONSTRUCTED = few_vertex_constructions()


def square_diagram():
    return from_points([1.0, -1.0, 1.0, -1.0])


class TestTransform:
    def test_triangle_all_at_origin(self):
        diag = gale_transform(regular_simplex_polytope(2))
        assert diag.codim == 0 and diag.n == 3

    def test_square(self):
        diag = gale_transform(SQUARE)
        x = diag.points[:, 0] / diag.points[0, 0]
        np.testing.assert_allclose(x, [1, -1, 1, -1], atol=1e-12)

    @pytest.mark.parametrize("name", sorted(CONSTRUCTED))
    def test_kernel_property(self, name):
        p = CONSTRUCTED[name]
        diag = gale_transform(p)
        assert np.abs(vertex_matrix(p) @ diag.points).max(initial=0.0) <= 1e-12
        assert diag.codim == p.n - p.dim - 1
        if diag.codim:
            assert np.linalg.matrix_rank(diag.points) == diag.codim

    def test_dplus2_multiplicities(self):
        c = contract_diagram(gale_transform(optimal_dplus2(4)))
        assert c.multiplicity_counts() == [3, 3]

    def test_json(self):
        diag = gale_transform(optimal_dplus3(4))
        back = GaleDiagram.from_dict(diag.to_dict())
        assert np.array_equal(back.points, diag.points) and back.labels == diag.labels


class TestRelint:
    def test_segment(self):
        assert origin_in_relint([[1.0], [-1.0]])
        assert not origin_in_relint([[-1.0], [-1.0]])

    def test_origin_on_boundary(self):
        assert not origin_in_relint([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])

    def test_lower_dimensional_hull(self):
        assert origin_in_relint([[1.0, 1.0], [-2.0, -2.0]])

    def test_only_origin(self):
        assert origin_in_relint([[0.0, 0.0]])

    def test_empty(self):
        assert not origin_in_relint(np.zeros((0, 2)))


class TestFaces:
    def test_square_adjacent(self):
        assert is_face(square_diagram(), {0, 1})

    def test_square_diagonal(self):
        assert not is_face(square_diagram(), {0, 2})

    def test_vertices_are_faces(self):
        diag = gale_transform(cyclic_trig(4, 7))
        assert all(is_face(diag, {i}) for i in range(7))

    def test_improper_subset(self):
        with pytest.raises(ValueError):
            is_face(square_diagram(), {0, 1, 2, 3})

    @pytest.mark.parametrize("name", sorted(CONSTRUCTED))
    def test_face_lattice_matches_facets(self, name):
        p = CONSTRUCTED[name]
        diag = gale_transform(p)
        for k in range(1, p.dim + 1):
            for s in combinations(range(p.n), k):
                assert is_face(diag, s) == brute_force_face(p, s), s

    @pytest.mark.parametrize("d", [4, 6])
    def test_cyclic_neighbourly(self, d):
        diag = gale_transform(cyclic_trig(d, d + 3))
        assert all(is_face(diag, s) for s in combinations(range(d + 3), d // 2))


class TestValidation:
    def test_square(self):
        assert validate_diagram(square_diagram()) == (True, None)

    def test_invalid(self):
        ok, witness = validate_diagram(from_points([1.0, 1.0, 1.0, -1.0]))
        assert not ok and witness is not None

    def test_heptagon_diagram(self):
        t = 2 * np.pi * np.arange(5) / 5
        assert validate_diagram(from_points(np.c_[np.cos(t), np.sin(t)]))[0]

    def test_codim_three_unsupported(self):
        with pytest.raises(UnsupportedError):
            validate_diagram(from_points(np.eye(3)))

    @pytest.mark.parametrize("name", sorted(CONSTRUCTED))
    def test_every_construction_valid(self, name):
        diag = gale_transform(CONSTRUCTED[name])
        assert validate_diagram(diag)[0]


class TestPredicates:
    def test_square(self):
        pr = diagram_predicates(square_diagram())
        assert pr.simplicial and not pr.pyramid

    def test_triangle(self):
        assert diagram_predicates(gale_transform(regular_simplex_polytope(2))).pyramid

    def test_c47(self):
        pr = diagram_predicates(gale_transform(cyclic_trig(4, 7)))
        assert pr.simplicial and not pr.pyramid

    @pytest.mark.parametrize("name", sorted(CONSTRUCTED))
    def test_simplicial_matches_facets(self, name):
        p = CONSTRUCTED[name]
        if p.n == p.dim + 1:
            return
        assert diagram_predicates(gale_transform(p)).simplicial == is_simplicial(p)


class TestContraction:
    @pytest.mark.parametrize("d", range(2, 9))
    def test_dplus2(self, d):
        c = contract_diagram(gale_transform(optimal_dplus2(d)))
        assert c.contracted
        assert c.multiplicity_counts() == sorted([d // 2 + 1, d - d // 2 + 1])

    @pytest.mark.parametrize("d", [2, 4, 6])
    def test_cyclic_regular_polygon(self, d):
        c = contract_diagram(gale_transform(cyclic_trig(d, d + 3)))
        assert c.contracted and c.multiplicity_counts() == [1] * (d + 3)
        ang = np.sort(np.mod(np.arctan2(c.points[:, 1], c.points[:, 0]), 2 * np.pi))
        np.testing.assert_allclose(np.diff(ang), 2 * np.pi / (d + 3), atol=1e-12)

    def test_octahedron(self):
        c = contract_diagram(gale_transform(optimal_dplus3(3)))
        assert c.multiplicity_counts() == [2, 2, 2]

    def test_p4(self):
        assert contract_diagram(gale_transform(optimal_dplus3(4))).multiplicity_counts() == [2, 2, 3]

    def test_non_simplicial_is_flagged(self):
        from spherevol.constructions import remark54_3polytope
        c = contract_diagram(gale_transform(remark54_3polytope()))
        assert not c.contracted and c.note

    @pytest.mark.parametrize("name", sorted(CONSTRUCTED))
    def test_preserves_faces(self, name):
        p = CONSTRUCTED[name]
        diag = gale_transform(p)
        if diag.codim not in (1, 2):
            return
        c = contract_diagram(diag)
        for k in range(1, p.dim + 1):
            for s in combinations(range(p.n), k):
                assert is_face(c, s) == is_face(diag, s)
