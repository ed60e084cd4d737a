"""Nerve construction, flagness, links, and the sphere certificate."""

import pytest

from coxruins import catalog
from coxruins.errors import FaceAbsent
from coxruins.nerve import (SimplicialComplex, build_nerve, is_flag, link,
                            sphere_check)
from coxruins.system import INF, SphericalPoset


def octahedron():
    """Boundary of the octahedron: vertices 0..5, antipodes (0,1),(2,3),(4,5)."""
    antipodal = {(0, 1), (2, 3), (4, 5)}
    facets = [
        (a, b, c)
        for a in (0, 1)
        for b in (2, 3)
        for c in (4, 5)
    ]
    return SimplicialComplex.from_simplices(facets), antipodal


class TestBuildNerve:
    def test_right_angled_square_is_cycle(self):
        L = build_nerve(catalog.right_angled_square())
        assert L.f_vector() == [4, 4]
        assert sphere_check(L, 1).verdict == "pass"

    def test_example_triple_is_path(self):
        L = build_nerve(catalog.example_triple())
        assert L.f_vector() == [3, 2]
        assert sphere_check(L, 1).verdict == "fail"

    def test_single_generator_point(self):
        from coxruins.system import matrix_from_rows

        L = build_nerve(matrix_from_rows(("s",), [[1]]))
        assert L.f_vector() == [1]

    def test_cross_polytope(self):
        L = build_nerve(catalog.cross_polytope_4())
        assert L.f_vector() == [8, 24, 32, 16]

    def test_restricted(self):
        M = catalog.book()
        L = build_nerve(M, restrict=(0, 1))
        assert L.f_vector() == [2]


class TestFlag:
    def test_cycle_is_flag(self):
        L = build_nerve(catalog.right_angled_square())
        flag, clique = is_flag(L)
        assert flag and clique is None

    def test_empty_triangle_not_flag(self):
        L = build_nerve(catalog.non_flag_triangle())
        flag, clique = is_flag(L)
        assert not flag
        assert clique == frozenset((0, 1, 2))

    def test_octahedron_flag(self):
        L, _ = octahedron()
        assert is_flag(L)[0]

    def test_clique_completion_criterion(self):
        # a complex equals the clique complex of its 1-skeleton iff flag
        for M in (catalog.right_angled_square(), catalog.non_flag_triangle(),
                  catalog.cross_polytope_4()):
            L = build_nerve(M)
            cliques = _clique_complex(L)
            assert (set(cliques) == set(L.simplices)) == is_flag(L)[0]


def _clique_complex(L):
    import itertools

    out = set()
    verts = L.vertices
    for k in range(1, len(verts) + 1):
        found = False
        for cand in itertools.combinations(verts, k):
            if all(
                L.has_edge(a, b) for a, b in itertools.combinations(cand, 2)
            ):
                out.add(frozenset(cand))
                found = True
        if not found:
            break
    return out


class TestLink:
    def test_vertex_in_cycle(self):
        L = build_nerve(catalog.right_angled_square())
        lk = link(L, (0,))
        assert lk.f_vector() == [2]

    def test_vertex_of_octahedron(self):
        # direct enumeration: the link of a vertex is the square on the four
        # non-antipodal vertices, the link of an edge is a point pair
        L, _ = octahedron()
        lk = link(L, (0,))
        assert lk.f_vector() == [4, 4]
        assert sphere_check(lk, 1).verdict == "pass"
        assert link(L, (0, 2)).f_vector() == [2]

    def test_edge_of_cross_polytope(self):
        L = build_nerve(catalog.cross_polytope_4())
        lk = link(L, (0, 2))
        assert lk.f_vector() == [4, 4]
        assert sphere_check(lk, 1).verdict == "pass"

    def test_maximal_simplex(self):
        L, _ = octahedron()
        lk = link(L, (0, 2, 4))
        assert lk.f_vector() == [0] or not lk.simplices

    def test_absent_face(self):
        L = build_nerve(catalog.right_angled_square())
        with pytest.raises(FaceAbsent):
            link(L, (0, 2))


class TestSphereCheck:
    def test_cycle_pass(self):
        L = build_nerve(catalog.right_angled_square())
        assert sphere_check(L, 1).verdict == "pass"

    def test_octahedron_pass(self):
        L, _ = octahedron()
        assert sphere_check(L, 2).verdict == "pass"

    def test_path_fail(self):
        L = build_nerve(catalog.example_triple())
        verdict = sphere_check(L, 1)
        assert verdict.verdict == "fail"
        assert "facet" in verdict.detail or "2" in verdict.detail

    def test_triangle_boundary_pass(self):
        L = SimplicialComplex.from_simplices([(0, 1), (1, 2), (0, 2)])
        assert sphere_check(L, 1).verdict == "pass"

    def test_two_points(self):
        L = SimplicialComplex.from_simplices([(0,), (1,)])
        assert sphere_check(L, 0).verdict == "pass"
        assert sphere_check(L, 1).verdict == "fail"

    def test_cross_polytope_is_three_sphere(self):
        L = build_nerve(catalog.cross_polytope_4())
        assert sphere_check(L, 3).verdict == "pass"

    def test_wrong_dim(self):
        L, _ = octahedron()
        assert sphere_check(L, 1).verdict == "fail"


class TestPaperInvariants:
    def test_edge_links_are_commuting_neighbors(self):
        # for every edge with label above 2, the link's vertex set is the
        # set of generators commuting with both ends
        for name in ("example_triple", "book", "cross_polytope_4",
                      "ambient_square"):
            M = catalog.NAMED[name]()
            poset = SphericalPoset(M)
            L = build_nerve(M, poset)
            for T in poset.of_rank(2):
                s, t = sorted(T)
                if M.label(s, t) <= 2:
                    continue
                lk = link(L, (s, t))
                expected = {
                    r for r in range(M.rank)
                    if r not in (s, t)
                    and M.label(r, s) == 2 and M.label(r, t) == 2
                }
                assert set(lk.vertices) == expected

    def test_branching_pairs_infinite(self):
        for name in ("example_triple", "book", "cross_polytope_4"):
            M = catalog.NAMED[name]()
            for t in range(M.rank):
                branching = [
                    s for s in range(M.rank)
                    if s != t and 2 < M.label(s, t) != INF
                ]
                for i, s in enumerate(branching):
                    for s2 in branching[i + 1:]:
                        assert M.label(s, s2) == INF

    def test_edge_link_equals_subsystem_nerve(self):
        for name in ("book", "cross_polytope_4"):
            M = catalog.NAMED[name]()
            poset = SphericalPoset(M)
            L = build_nerve(M, poset)
            for T in poset.of_rank(2):
                s, t = sorted(T)
                if M.label(s, t) <= 2:
                    continue
                ust = tuple(
                    r for r in range(M.rank)
                    if r not in (s, t)
                    and M.label(r, s) == 2 and M.label(r, t) == 2
                )
                lk = link(L, (s, t))
                sub = build_nerve(M, poset, restrict=ust)
                assert set(lk.simplices) == set(sub.simplices)
