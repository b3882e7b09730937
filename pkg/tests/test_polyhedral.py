import random
from fractions import Fraction as F

import pytest

from tropicon.polyhedral import (
    AffineHyperplane, Complex, EmptyPolyhedron, HRep, Polyhedron, codim1_faces,
    dim_lineality_pointed, dual_description, intersect, is_face_of,
    relint_point, validate_complex,
)
from tropicon.ratlin import ZeroVector, dot, vec


def cone(*rays, lineality=(), n=None):
    return Polyhedron.cone(rays, lineality, ambient_dim=n)


class TestDualDescription:
    def test_coordinate_cone(self):
        h = dual_description(cone([1, 0], [0, 1]))
        assert sorted(h.inequalities) == [
            (vec([0, 1]), F(0)), (vec([1, 0]), F(0))]
        assert h.equations == ()

    def test_unit_square(self):
        sq = Polyhedron.from_vertices([[0, 0], [1, 0], [0, 1], [1, 1]])
        ineqs = sorted(sq.hrep.inequalities)
        assert ineqs == [
            (vec([-1, 0]), F(-1)), (vec([0, -1]), F(-1)),
            (vec([0, 1]), F(0)), (vec([1, 0]), F(0))]

    def test_halfplane_decomposition(self):
        p = dual_description(HRep(2, ((vec([1, 0]), F(0)),), ()))
        assert p.vertices == ()  # implicit apex at the origin
        assert p.rays == (vec([1, 0]),)
        assert p.lineality == (vec([0, 1]),)

    def test_empty_hrep(self):
        with pytest.raises(EmptyPolyhedron):
            Polyhedron.from_hrep(HRep(1, ((vec([1]), F(1)), (vec([-1]), F(0))), ()))

    def test_round_trip_random_cones(self):
        rng = random.Random(2718)
        for _ in range(50):
            n = rng.randint(1, 4)
            k = rng.randint(1, n + 2)
            rays = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(k)]
            rays = [r for r in rays if any(r)]
            if not rays:
                continue
            p = cone(*rays, n=n)
            q = Polyhedron.from_hrep(p.hrep)
            assert q.canonical_key == p.canonical_key

    def test_hrep_inequalities_valid_and_irredundant(self):
        from tropicon.ratlin import LinearProgram, lp_feasible
        rng = random.Random(5050)
        for _ in range(20):
            n = rng.randint(2, 4)
            rays = [[rng.randint(-4, 4) for _ in range(n)]
                    for _ in range(rng.randint(2, n + 2))]
            rays = [r for r in rays if any(r)]
            if not rays:
                continue
            p = cone(*rays, n=n)
            h = p.hrep
            for a, b in h.inequalities:
                assert b == 0
                assert all(dot(a, vec(r)) >= 0 for r in rays)
            # irredundancy: dropping any inequality admits a violating point
            for i, (a_i, _) in enumerate(h.inequalities):
                cons = [(a_j, F(0), ">=") for j, (a_j, _) in
                        enumerate(h.inequalities) if j != i]
                cons += [(e, F(0), "=") for e, _ in h.equations]
                cons.append((tuple(-x for x in a_i), F(0), ">"))
                assert lp_feasible(LinearProgram(n, tuple(cons))) is not None

    def test_round_trip_random_polytopes(self):
        rng = random.Random(31415)
        for _ in range(25):
            n = rng.randint(1, 3)
            pts = [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
                   for _ in range(rng.randint(1, 6))]
            p = Polyhedron.from_vertices(pts)
            q = Polyhedron.from_hrep(p.hrep)
            assert q.canonical_key == p.canonical_key


class TestDimLinealityPointed:
    def test_pointed_cone(self):
        d, lin, pointed = dim_lineality_pointed(cone([1, 0], [0, 1]))
        assert (d, lin, pointed) == (2, (), True)

    def test_halfplane(self):
        p = Polyhedron.from_hrep(HRep(2, ((vec([1, 0]), F(0)),), ()))
        d, lin, pointed = dim_lineality_pointed(p)
        assert d == 2 and lin == (vec([0, 1]),) and not pointed

    def test_segment(self):
        p = Polyhedron.from_vertices([[0, 0, 0], [1, 0, 0]])
        d, lin, pointed = dim_lineality_pointed(p)
        assert d == 1 and lin == () and pointed

    def test_hidden_lineality_in_rays(self):
        p = cone([1, 0], [-1, 0], [0, 1])
        d, lin, pointed = dim_lineality_pointed(p)
        assert d == 2 and lin == (vec([1, 0]),) and not pointed


class TestRelintPoint:
    def test_sum_of_rays(self):
        assert relint_point(cone([1, 0], [0, 1])) == vec([1, 1])

    def test_barycenter(self):
        assert relint_point(Polyhedron.from_vertices([[0], [1]])) == vec([F(1, 2)])

    def test_strictness_with_lineality(self):
        # the literal cell: rays e1, e2 and lineality -(1,1); this is a halfplane
        p = cone([1, 0], [0, 1], lineality=[[-1, -1]])
        pt = relint_point(p)
        for a, b in p.hrep.inequalities:
            assert dot(a, pt) > b

    def test_full_plane_cell(self):
        p = cone([1, 0], [0, 1], lineality=[[1, -1]])
        pt = relint_point(p)
        assert p.contains_point(pt)


class TestCodim1Faces:
    def test_quadrant(self):
        faces = codim1_faces(cone([1, 0], [0, 1]))
        keys = {f.canonical_key for f in faces}
        assert keys == {cone([1, 0]).canonical_key, cone([0, 1]).canonical_key}

    def test_cube_has_six_facets(self):
        cube = Polyhedron.from_vertices(
            [[i, j, k] for i in (0, 1) for j in (0, 1) for k in (0, 1)])
        faces = codim1_faces(cube)
        assert len(faces) == 6
        assert all(f.dim == 2 for f in faces)

    def test_simplicial_drop_one_rule_matches_hrep_route(self):
        gens = [[1, 0, 0], [1, 2, 0], [1, 1, 3]]
        p = cone(*gens)
        by_rule = {cone(*(g for j, g in enumerate(gens) if j != i)).canonical_key
                   for i in range(3)}
        by_hrep = {f.canonical_key for f in codim1_faces(p)}
        assert by_rule == by_hrep

    def test_faces_are_faces_of_correct_dim(self):
        p = cone([2, 0, 1], [0, 1, 0], [1, 1, 1], [0, 0, 1])
        for f in codim1_faces(p):
            assert is_face_of(f, p)
            assert f.dim == p.dim - 1


class TestIsFaceOf:
    def test_ray_of_quadrant(self):
        assert is_face_of(cone([1, 0]), cone([1, 0], [0, 1]))

    def test_interior_ray_is_not_a_face(self):
        assert not is_face_of(cone([1, 1]), cone([1, 0], [0, 1]))

    def test_apex_is_a_face(self):
        assert is_face_of(cone([], n=2), cone([1, 0], [0, 1]))
        assert is_face_of(cone([], n=3), cone([1, 0, 0], [1, 2, 0], [1, 1, 3]))

    def test_whole_polyhedron_is_a_face(self):
        p = cone([1, 0], [0, 1])
        assert is_face_of(p, p)

    def test_vertex_of_segment(self):
        seg = Polyhedron.from_vertices([[0], [1]])
        assert is_face_of(Polyhedron.from_vertices([[1]]), seg)
        assert not is_face_of(Polyhedron.from_vertices([[F(1, 2)]]), seg)


class TestCanonicalForm:
    def test_redundant_generators_ignored(self):
        assert cone([1, 0], [0, 1], [1, 1]) == cone([0, 1], [1, 0])

    def test_opposite_rays_become_lineality(self):
        assert cone([1, 0], [-1, 0]) == cone([], lineality=[[1, 0]], n=2)

    def test_scaling_invariance(self):
        assert cone([2, 4]) == cone([1, 2])

    def test_distinct_cones_differ(self):
        assert cone([1, 0]) != cone([0, 1])

    def test_hashable_and_dedupable(self):
        assert len({cone([1, 0], [0, 1]), cone([0, 1], [1, 0])}) == 1


class TestValidateComplex:
    def test_two_planes_is_valid(self):
        from tropicon.tropical import two_planes_fan
        report = validate_complex(two_planes_fan(), pairwise=True)
        assert report.valid
        assert report.dim == 2

    def test_overlapping_cones_flagged(self):
        c = Complex.from_facets(
            [cone([1, 0], [0, 1]), cone([1, 1], [1, -1])], ambient_dim=2)
        report = validate_complex(c, pairwise=True)
        assert not report.valid
        assert any("common face" in msg for msg in report.issues)

    def test_impure_complex_flagged(self):
        c = Complex.from_facets(
            [cone([1, 0, 0], [0, 1, 0]), cone([0, 0, 1])], ambient_dim=3)
        report = validate_complex(c)
        assert not report.valid
        assert any("dimension" in msg for msg in report.issues)

    def test_facet_missing_lineality_rejected(self):
        with pytest.raises(ValueError, match="lineality"):
            Complex.from_facets([cone([1, 0])], lineality=[[0, 1]], ambient_dim=2)

    def test_facet_with_lineality_as_opposite_rays_accepted(self):
        c = Complex.from_facets([cone([0, 1], [0, -1], [1, 0])],
                                lineality=[[0, 1]], ambient_dim=2)
        assert validate_complex(c).valid


class TestIntersect:
    def test_cones(self):
        a = cone([1, 0], [1, 2])
        b = cone([1, 2], [-1, 1])
        inter = intersect(a, b)
        assert inter == cone([1, 2])

    def test_disjoint_polytopes(self):
        a = Polyhedron.from_vertices([[0], [1]])
        b = Polyhedron.from_vertices([[2], [3]])
        assert intersect(a, b) is None


class TestAffineHyperplane:
    def test_normalizes_to_primitive(self):
        H = AffineHyperplane(vec([2, 4]), F(6))
        assert H.normal == vec([1, 2])
        assert H.offset == F(3)

    def test_zero_normal_rejected(self):
        with pytest.raises(ZeroVector):
            AffineHyperplane(vec([0, 0]), F(1))
