"""Named example systems used by the test suite, the benchmark, and the docs.

Generator order matters: normal forms break shortlex ties by input order.
"""

from __future__ import annotations

from .system import CoxeterMatrix, matrix_from_rows


def dihedral(m: int) -> CoxeterMatrix:
    """I2(m): two generators with (st)^m = 1; m = 0 gives the infinite one."""
    return matrix_from_rows(("s", "t"), [[1, m], [m, 1]])


def square(labels=(2, 2, 2, 2)) -> CoxeterMatrix:
    """Four generators in a cycle a-b-c-d with the given edge labels and no
    relation across the diagonals; the nerve is a 4-cycle."""
    ab, bc, cd, da = labels
    return matrix_from_rows(
        ("a", "b", "c", "d"),
        [
            [1, ab, 0, da],
            [ab, 1, bc, 0],
            [0, bc, 1, cd],
            [da, 0, cd, 1],
        ],
    )


def right_angled_square() -> CoxeterMatrix:
    return square((2, 2, 2, 2))


def square_all_4() -> CoxeterMatrix:
    return square((4, 4, 4, 4))


def example_triple() -> CoxeterMatrix:
    """Three generators r, s, t with (rt)^2 = (st)^4 = 1 and no r-s relation;
    the star of t is the whole set and the nerve is the path r - t - s."""
    return matrix_from_rows(
        ("r", "s", "t"),
        [
            [1, 0, 2],
            [0, 1, 4],
            [2, 4, 1],
        ],
    )


def ambient_square() -> CoxeterMatrix:
    """A 4-cycle nerve q - r - t - s - q whose star of t reproduces
    example_triple; edges t-r and the two q-edges are right angles, t-s
    carries the label 4."""
    return matrix_from_rows(
        ("q", "r", "s", "t"),
        [
            [1, 2, 2, 0],
            [2, 1, 0, 2],
            [2, 0, 1, 4],
            [0, 2, 4, 1],
        ],
    )


def example_triple_6() -> CoxeterMatrix:
    """The example_triple shape with the label 6 in place of 4: branching
    dihedrals get three even coset classes, so stability questions about
    multiple even collars stop being vacuous."""
    return matrix_from_rows(
        ("r", "s", "t"),
        [
            [1, 0, 2],
            [0, 1, 6],
            [2, 6, 1],
        ],
    )


def book_6() -> CoxeterMatrix:
    """The book with the spine label 6 instead of 4."""
    return matrix_from_rows(
        ("r1", "r2", "s", "t"),
        [
            [1, 0, 2, 2],
            [0, 1, 2, 2],
            [2, 2, 1, 6],
            [2, 2, 6, 1],
        ],
    )


def mini_book() -> CoxeterMatrix:
    """Finite system {r, s, t}: (st)^4 = 1 and r commutes with both; the
    whole group has order 16, so every truncation question closes up."""
    return matrix_from_rows(
        ("r", "s", "t"),
        [
            [1, 2, 2],
            [2, 1, 4],
            [2, 4, 1],
        ],
    )


def book() -> CoxeterMatrix:
    """{r1, r2, s, t}: (st)^4 = 1, both r's commute with s and t, and the
    r's have no relation with each other.  The common commuting neighbors of
    s and t generate an infinite dihedral group."""
    return matrix_from_rows(
        ("r1", "r2", "s", "t"),
        [
            [1, 0, 2, 2],
            [0, 1, 2, 2],
            [2, 2, 1, 4],
            [2, 2, 4, 1],
        ],
    )


def dihedral_product() -> CoxeterMatrix:
    """I2(4) x I2(4): four generators, order-64 group, full complex at small
    radius; the standard finite stage for excision checks."""
    return matrix_from_rows(
        ("s1", "t1", "s2", "t2"),
        [
            [1, 4, 2, 2],
            [4, 1, 2, 2],
            [2, 2, 1, 4],
            [2, 2, 4, 1],
        ],
    )


def cross_polytope_4() -> CoxeterMatrix:
    """Even system whose nerve is the boundary of the 4-dimensional cross
    polytope (a flag 3-sphere on 8 vertices): antipodal pairs have no
    relation, a perfect matching of edges carries the label 4, every other
    edge is a right angle."""
    names = ("a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2")
    n = 8
    rows = [[2] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1
    for i in range(0, n, 2):
        rows[i][i + 1] = rows[i + 1][i] = 0
    for i, j in ((0, 2), (1, 3), (4, 6), (5, 7)):
        rows[i][j] = rows[j][i] = 4
    return matrix_from_rows(names, rows)


def right_angled_octahedron() -> CoxeterMatrix:
    """Right-angled system on the octahedron (flag 2-sphere on 6 vertices)."""
    names = ("x1", "x2", "y1", "y2", "z1", "z2")
    n = 6
    rows = [[2] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1
    for i in range(0, n, 2):
        rows[i][i + 1] = rows[i + 1][i] = 0
    return matrix_from_rows(names, rows)


def non_flag_triangle() -> CoxeterMatrix:
    """Three generators, all pairwise labels 4: each pair is spherical but
    the triple is not, so the nerve is an empty triangle (not flag)."""
    return matrix_from_rows(
        ("a", "b", "c"),
        [
            [1, 4, 4],
            [4, 1, 4],
            [4, 4, 1],
        ],
    )


NAMED = {
    "i2_2": lambda: dihedral(2),
    "i2_4": lambda: dihedral(4),
    "i2_6": lambda: dihedral(6),
    "i2_8": lambda: dihedral(8),
    "right_angled_square": right_angled_square,
    "square_all_4": square_all_4,
    "example_triple": example_triple,
    "example_triple_6": example_triple_6,
    "ambient_square": ambient_square,
    "book_6": book_6,
    "mini_book": mini_book,
    "book": book,
    "dihedral_product": dihedral_product,
    "cross_polytope_4": cross_polytope_4,
    "right_angled_octahedron": right_angled_octahedron,
    "non_flag_triangle": non_flag_triangle,
}
