import itertools

import pytest

from tropicon.matroid import (
    Flat, HasLoops, LoopContraction, Matroid, bergman_fine,
    check_rank_axioms, closure_and_rank, contraction, matroid_from_json,
    maximal_chains, parallel_classes_and_loops, proper_flats,
)
from tropicon.polyhedral import validate_complex

K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def k4():
    return Matroid.graphic(K4_EDGES)


class TestClosureAndRank:
    def test_uniform_pair(self):
        flat, r = closure_and_rank(Matroid.uniform(3, 4), {0, 1})
        assert flat.elements == frozenset({0, 1}) and r == 2

    def test_uniform_full_rank_closes_up(self):
        flat, r = closure_and_rank(Matroid.uniform(3, 4), {0, 1, 2})
        assert flat.elements == frozenset({0, 1, 2, 3}) and r == 3

    def test_graphic_triangle_closes(self):
        # edges 0=(0,1) and 1=(0,2) span the triangle {0,1,3} on vertices 0,1,2
        flat, r = closure_and_rank(k4(), {0, 1})
        assert flat.elements == frozenset({0, 1, 3}) and r == 2

    def test_closure_idempotent_and_monotone(self):
        m = k4()
        for S in itertools.combinations(range(6), 2):
            cl = m.closure(S)
            assert m.closure(cl) == cl
            assert frozenset(S) <= cl


class TestProperFlats:
    def test_u23(self):
        flats = proper_flats(Matroid.uniform(2, 3))
        assert {r: len(fs) for r, fs in flats.items()} == {1: 3}
        assert all(len(f.elements) == 1 for f in flats[1])

    def test_u34(self):
        flats = proper_flats(Matroid.uniform(3, 4))
        assert {r: len(fs) for r, fs in flats.items()} == {1: 4, 2: 6}

    def test_k4_flat_census(self):
        flats = proper_flats(k4())
        assert {r: len(fs) for r, fs in flats.items()} == {1: 6, 2: 7}
        rank2 = [f.elements for f in flats[2]]
        triangles = [f for f in rank2 if len(f) == 3]
        matchings = [f for f in rank2 if len(f) == 2]
        assert len(triangles) == 4 and len(matchings) == 3


class TestMaximalChains:
    def test_counts(self):
        assert len(maximal_chains(Matroid.uniform(2, 3))) == 3
        assert len(maximal_chains(Matroid.uniform(3, 4))) == 12
        assert len(maximal_chains(k4())) == 18

    def test_chain_structure(self):
        for chain in maximal_chains(Matroid.uniform(3, 4)):
            assert [f.rank for f in chain.flats] == [1, 2]
            assert chain.flats[0].elements < chain.flats[1].elements

    def test_loops_rejected(self):
        loopy = Matroid.from_bases(3, [[0], [1]])
        with pytest.raises(HasLoops):
            maximal_chains(loopy)


class TestBergmanFine:
    @pytest.mark.parametrize("r,n,rays,facets", [(2, 3, 3, 3), (3, 4, 10, 12)])
    def test_uniform_counts(self, r, n, rays, facets):
        b = bergman_fine(Matroid.uniform(r, n))
        assert len(b.ray_pool) == rays
        assert len(b) == facets
        assert b.lineality_dim == 1
        assert b.dim == r

    def test_k4_counts(self):
        b = bergman_fine(k4())
        assert len(b.ray_pool) == 13 and len(b) == 18

    def test_valid_and_counts_match_lattice(self):
        m = Matroid.uniform(3, 4)
        b = bergman_fine(m)
        assert validate_complex(b, pairwise=True).valid
        assert len(b) == len(maximal_chains(m))
        assert len(b.ray_pool) == sum(len(v) for v in proper_flats(m).values())

    def test_facets_simplicial_modulo_lineality(self):
        b = bergman_fine(k4())
        for f in b.facet_polyhedra:
            assert len(f.rays) == f.dim - 1  # rays + the lineality line

    def test_weights_are_one(self):
        assert set(bergman_fine(Matroid.uniform(3, 4)).weights) == {1}


class TestContraction:
    def test_uniform_contraction_is_uniform(self):
        c = contraction(Matroid.uniform(3, 4), 0)
        assert c.elements == (1, 2, 3)
        u23 = Matroid.uniform(2, 3)
        for k in range(4):
            for S in itertools.combinations((1, 2, 3), k):
                relabeled = frozenset(x - 1 for x in S)
                assert c.rank(S) == u23.rank(relabeled)

    def test_rank_drops_by_one(self):
        m = k4()
        c = contraction(m, 0)
        assert c.full_rank == m.full_rank - 1

    def test_graphic_contraction_parallel_pairs(self):
        classes, loops = parallel_classes_and_loops(contraction(k4(), 0))
        assert not loops
        assert sorted(sorted(c) for c in classes) == [[1, 3], [2, 4], [5]]

    def test_loop_contraction_rejected(self):
        loopy = Matroid.from_bases(3, [[0], [1]])
        with pytest.raises(LoopContraction):
            contraction(loopy, 2)


class TestParallelClassesAndLoops:
    def test_uniform_no_loops(self):
        classes, loops = parallel_classes_and_loops(Matroid.uniform(3, 4))
        assert sorted(sorted(c) for c in classes) == [[0], [1], [2], [3]]
        assert not loops

    def test_bases_oracle_parallel_and_loop(self):
        m = Matroid.from_bases(3, [[0], [1]])
        assert m.rank({0, 1}) == 1
        classes, loops = parallel_classes_and_loops(m)
        assert classes == [frozenset({0, 1})]
        assert loops == frozenset({2})


class TestRankAxioms:
    @pytest.mark.parametrize("m", [
        Matroid.uniform(2, 4),
        Matroid.uniform(3, 5),
        Matroid.graphic(K4_EDGES),
        Matroid.linear([[1, 0], [0, 1], [1, 1], [2, 2]]),
        Matroid.from_bases(3, [[0, 1], [0, 2], [1, 2]]),
    ], ids=["u24", "u35", "k4", "linear", "bases"])
    def test_exhaustive(self, m):
        check_rank_axioms(m)

    def test_exchange_violation_rejected(self):
        with pytest.raises(ValueError, match="exchange"):
            Matroid.from_bases(4, [[0, 1], [2, 3]])

    def test_ground_limit(self):
        with pytest.raises(ValueError, match="limit"):
            Matroid.uniform(2, 13)
        m = Matroid(range(13), lambda S: min(len(S), 2), allow_large=True)
        assert m.full_rank == 2


class TestFlatContractionBijection:
    """Flats containing cl({e}) correspond to flats of M/e, rank shifted by one."""

    @staticmethod
    def all_flats(m):
        # brute-force oracle: close every subset of the ground set
        out = set()
        for k in range(len(m.elements) + 1):
            for S in itertools.combinations(m.elements, k):
                cl = m.closure(S)
                out.add((cl, m.rank(cl)))
        return out

    @pytest.mark.parametrize("m", [
        Matroid.uniform(2, 3), Matroid.uniform(3, 4), Matroid.graphic(K4_EDGES),
    ], ids=["u23", "u34", "k4"])
    def test_bijection(self, m):
        for e in m.elements:
            cl_e = m.closure({e})
            upper = [(els, r) for els, r in self.all_flats(m) if cl_e <= els]
            contracted = self.all_flats(contraction(m, e))
            mapped = {(frozenset(x for x in els if x != e), r - 1)
                      for els, r in upper}
            assert mapped == contracted
            assert len(mapped) == len(upper)


class TestMatroidJson:
    def test_uniform(self):
        m = matroid_from_json({"type": "uniform", "r": 3, "n": 4})
        assert m.full_rank == 3 and len(m.elements) == 4

    def test_graphic(self):
        m = matroid_from_json({"type": "graphic", "edges": [[0, 1], [1, 2], [0, 2]]})
        assert m.full_rank == 2

    def test_linear(self):
        m = matroid_from_json({"type": "linear",
                               "columns": [["1", "0"], ["0", "1"], ["1/2", "1/2"]]})
        assert m.full_rank == 2
        assert m.rank({0, 2}) == 2

    def test_bases(self):
        m = matroid_from_json({"type": "bases", "n": 3, "bases": [[0], [1]]})
        assert m.rank({0, 1}) == 1

    def test_unknown_type(self):
        with pytest.raises(ValueError, match="unknown matroid type"):
            matroid_from_json({"type": "transversal"})
