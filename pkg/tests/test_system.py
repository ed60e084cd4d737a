"""Matrix parsing, finite-type recognition, the spherical poset, chi_orb,
and the generator-killing projections."""

import json
import math
from fractions import Fraction

import pytest

from coxruins import catalog
from coxruins.errors import InvalidMatrix, NotEven, ParseError
from coxruins.system import (INF, CoxeterMatrix, GeneratorProjection,
                             SphericalPoset, chi_orb, even_spherical_shortcut,
                             is_spherical, matrix_from_rows, parse_system,
                             spherical_info)
from coxruins.words import WordEngine

from conftest import brute_force_group_order, dihedral_order_oracle


def text_of(M):
    return json.dumps(M.to_json_dict())


class TestParse:
    def test_dihedral(self):
        M = parse_system('{"generators": ["s", "t"], "matrix": [[1,4],[4,1]]}')
        assert M.rank == 2
        assert M.label(0, 1) == 4

    def test_example_triple(self):
        M = parse_system(text_of(catalog.example_triple()))
        assert M.label(0, 2) == 2
        assert M.label(1, 2) == 4
        assert M.label(0, 1) == INF
        assert M.is_even

    def test_off_diagonal_one_rejected(self):
        with pytest.raises(InvalidMatrix) as err:
            parse_system('{"generators": ["s","t"], "matrix": [[1,1],[1,1]]}')
        assert err.value.indices == (0, 1)

    def test_asymmetric_rejected(self):
        with pytest.raises(InvalidMatrix):
            parse_system(
                '{"generators": ["s","t"], "matrix": [[1,4],[2,1]]}'
            )

    def test_bad_diagonal_rejected(self):
        with pytest.raises(InvalidMatrix):
            parse_system(
                '{"generators": ["s","t"], "matrix": [[2,4],[4,1]]}'
            )

    def test_not_json(self):
        with pytest.raises(ParseError):
            parse_system("generators: s, t")

    def test_missing_keys(self):
        with pytest.raises(ParseError):
            parse_system('{"matrix": [[1]]}')

    def test_negative_entry(self):
        with pytest.raises(ParseError):
            parse_system('{"generators": ["s","t"], "matrix": [[1,-2],[-2,1]]}')

    def test_shape_mismatch(self):
        with pytest.raises(InvalidMatrix):
            parse_system('{"generators": ["s","t"], "matrix": [[1,4]]}')

    def test_evenness_flag(self):
        assert not matrix_from_rows(("a", "b"), [[1, 3], [3, 1]]).is_even
        assert matrix_from_rows(("a", "b"), [[1, 0], [0, 1]]).is_even


def path_matrix(labels):
    """Path diagram with the given consecutive labels, 2 elsewhere."""
    n = len(labels) + 1
    rows = [[2] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1
    for i, m in enumerate(labels):
        rows[i][i + 1] = rows[i + 1][i] = m
    return matrix_from_rows(tuple(f"g{i}" for i in range(n)), rows)


class TestRecognition:
    def test_empty_set(self):
        M = catalog.dihedral(4)
        assert spherical_info(M, ()) == (1, 0)

    def test_dihedral_orders_match_permutation_oracle(self):
        for m in (2, 3, 4, 6, 8):
            M = catalog.dihedral(m)
            info = spherical_info(M, (0, 1))
            assert info is not None
            assert info[0] == dihedral_order_oracle(m) == 2 * m
            assert info[1] == m

    def test_infinite_pair(self):
        M = catalog.dihedral(0)
        assert not is_spherical(M, (0, 1))

    def test_even_triangle_442_infinite(self):
        M = matrix_from_rows(
            ("a", "b", "c"), [[1, 4, 4], [4, 1, 2], [4, 2, 1]]
        )
        assert not is_spherical(M, (0, 1, 2))

    @pytest.mark.parametrize(
        "labels,order,longest",
        [
            ((3, 3), 24, 6),       # symmetric group S4
            ((4, 3), 48, 9),       # hyperoctahedral rank 3
            ((3, 4), 48, 9),
            ((5, 3), 120, 15),
            ((3, 4, 3), 1152, 24),
            ((4, 3, 3), 384, 16),
            ((5, 3, 3), 14400, 60),
            ((3, 3, 3), 120, 10),  # symmetric group S5
        ],
    )
    def test_paths_vs_brute_force(self, labels, order, longest):
        M = path_matrix(labels)
        info = spherical_info(M, range(M.rank))
        assert info == (order, longest)
        # braid classes of very long words explode; brute force only the
        # groups whose reduced-expression classes stay small
        if order <= 400:
            assert brute_force_group_order(M, range(M.rank)) == order

    def test_branching_d4(self):
        rows = [
            [1, 3, 3, 3],
            [3, 1, 2, 2],
            [3, 2, 1, 2],
            [3, 2, 2, 1],
        ]
        M = matrix_from_rows(("c", "x", "y", "z"), rows)
        assert spherical_info(M, range(4)) == (192, 12)
        assert brute_force_group_order(M, range(4)) == 192

    def test_exceptional_table_values(self):
        def branch(n, legs):
            rows = [[2] * n for _ in range(n)]
            for i in range(n):
                rows[i][i] = 1
            edges = []
            v = 1
            for leg in legs:
                prev = 0
                for _ in range(leg):
                    edges.append((prev, v))
                    prev = v
                    v += 1
            for a, b in edges:
                rows[a][b] = rows[b][a] = 3
            return matrix_from_rows(tuple(f"g{i}" for i in range(n)), rows)

        assert spherical_info(branch(7, (1, 2, 3)), range(7)) == (2903040, 63)
        assert spherical_info(branch(9, (1, 2, 5)), range(9)) is None
        assert spherical_info(branch(6, (1, 2, 2)), range(6)) == (51840, 36)
        assert spherical_info(branch(8, (1, 2, 4)), range(8)) == (696729600, 120)
        assert spherical_info(branch(9, (2, 2, 2)), range(9)) is None

    def test_cycle_infinite(self):
        rows = [[1, 3, 3], [3, 1, 3], [3, 3, 1]]
        M = matrix_from_rows(("a", "b", "c"), rows)
        assert not is_spherical(M, range(3))

    def test_disconnected_product(self):
        M = catalog.dihedral_product()
        assert spherical_info(M, range(4)) == (64, 8)
        M2 = catalog.right_angled_square()
        assert spherical_info(M2, (0, 1)) == (4, 2)

    def test_even_shortcut_agrees(self):
        from itertools import combinations

        for name in ("example_triple", "right_angled_square", "square_all_4",
                      "book", "cross_polytope_4"):
            M = catalog.NAMED[name]()
            for k in range(M.rank + 1):
                for T in combinations(range(M.rank), k):
                    assert even_spherical_shortcut(M, T) == is_spherical(M, T)

    def test_shortcut_requires_even(self):
        with pytest.raises(NotEven):
            even_spherical_shortcut(catalog.dihedral(3), (0, 1))


class TestSphericalPoset:
    def test_dihedral_poset(self):
        poset = SphericalPoset(catalog.dihedral(4))
        assert sorted(map(sorted, poset)) == [[], [0], [0, 1], [1]]
        assert poset.rank_counts() == [1, 2, 1]
        assert poset.order((0, 1)) == 8

    def test_example_triple_excludes_rs(self):
        M = catalog.example_triple()
        poset = SphericalPoset(M)
        assert len(poset) == 6
        assert frozenset((0, 1)) not in poset
        assert frozenset((1, 2)) in poset
        assert poset.longest_length((1, 2)) == 4

    def test_right_angled_square_count(self):
        poset = SphericalPoset(catalog.right_angled_square())
        assert len(poset) == 9
        assert poset.rank_counts() == [1, 4, 4]

    def test_downward_closed(self):
        for name in ("example_triple", "book", "cross_polytope_4"):
            poset = SphericalPoset(catalog.NAMED[name]())
            have = set(poset)
            for T in have:
                for x in T:
                    assert T - {x} in have

    def test_filters(self):
        poset = SphericalPoset(catalog.mini_book())
        r, s, t = 0, 1, 2
        assert poset.at_least({s, t}) == [frozenset({s, t}),
                                          frozenset({r, s, t})]
        assert frozenset({r}) in poset.less_than({r, s})
        assert all(T <= {r, s} for T in poset.subsets_of({r, s}))

    def test_cap(self):
        from coxruins.errors import ExplosionGuard

        with pytest.raises(ExplosionGuard):
            SphericalPoset(catalog.cross_polytope_4(), cap=10)


class TestChiOrb:
    def test_right_angled_square_zero(self):
        assert chi_orb(catalog.right_angled_square()) == 0

    def test_all_four_square(self):
        assert chi_orb(catalog.square_all_4()) == Fraction(-1, 2)

    def test_single_generator(self):
        M = matrix_from_rows(("s",), [[1]])
        assert chi_orb(M) == Fraction(1, 2)

    def test_cross_polytope_value(self):
        assert chi_orb(catalog.cross_polytope_4()) == Fraction(1, 16)

    def test_product_multiplicativity(self):
        def block_product(A, B):
            n, m = A.rank, B.rank
            rows = [[2] * (n + m) for _ in range(n + m)]
            for i in range(n):
                for j in range(n):
                    rows[i][j] = 0 if A.label(i, j) == INF else int(A.label(i, j))
            for i in range(m):
                for j in range(m):
                    rows[n + i][n + j] = (
                        0 if B.label(i, j) == INF else int(B.label(i, j))
                    )
            names = tuple(f"a{i}" for i in range(n)) + tuple(
                f"b{i}" for i in range(m)
            )
            return matrix_from_rows(names, rows)

        pairs = [
            (catalog.dihedral(4), catalog.example_triple()),
            (catalog.right_angled_square(), catalog.dihedral(6)),
        ]
        for A, B in pairs:
            assert chi_orb(block_product(A, B)) == chi_orb(A) * chi_orb(B)


class TestProjection:
    def test_parity_rule_on_dihedral(self):
        M = catalog.dihedral(4)
        eng = WordEngine(M)
        s, t = 0, 1
        proj = GeneratorProjection(M, frozenset((s, t)), frozenset((t,)))
        assert proj.apply(eng, bytes((s, t, s))) == bytes((t,))
        # two occurrences of t cancel in the image
        assert proj.apply(eng, bytes((t, s, t))) == b""
        assert proj.apply(eng, b"") == b""

    def test_identity_projection(self):
        M = catalog.example_triple()
        eng = WordEngine(M)
        V = frozenset(range(3))
        proj = GeneratorProjection(M, V, V)
        for w in eng.ball(4):
            assert proj.apply(eng, w) == w

    def test_not_even_rejected(self):
        M = catalog.dihedral(3)
        with pytest.raises(NotEven):
            GeneratorProjection(M, frozenset((0, 1)), frozenset((0,)))

    def test_homomorphism_small(self):
        M = catalog.example_triple()
        eng = WordEngine(M)
        V = frozenset((0, 1, 2))
        for T in (frozenset((2,)), frozenset((1, 2))):
            proj = GeneratorProjection(M, V, T)
            ball = list(eng.ball(3))
            for u in ball:
                for v in ball:
                    uv = eng.mult_word(u, v)
                    lhs = proj.apply(eng, uv)
                    rhs = eng.mult_word(proj.apply(eng, u),
                                        proj.apply(eng, v))
                    assert lhs == rhs

    def test_out_of_source_rejected(self):
        M = catalog.example_triple()
        eng = WordEngine(M)
        proj = GeneratorProjection(M, frozenset((1, 2)), frozenset((2,)))
        with pytest.raises(ValueError):
            proj.apply(eng, bytes((0,)))


def test_digest_stable():
    M = catalog.example_triple()
    assert M.digest() == parse_system(text_of(M)).digest()
    assert len(M.digest()) == 12


def test_infinity_is_distinct_sentinel():
    M = catalog.example_triple()
    assert M.label(0, 1) == math.inf
    assert M.kernel_rows()[0][1] == 0
