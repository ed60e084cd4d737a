"""Exact rational homology: ranks, Betti tables, Euler characteristics,
excision consistency, and top-cycle rigidity."""

import random
from fractions import Fraction

import pytest

from coxruins import catalog
from coxruins.cells import Cell, CellPoset, build_ruin
from coxruins.errors import NotClosed
from coxruins.homology import (ChainComplex, excision_check, pair_betti,
                               rank_sparse, simplicial_homology)
from coxruins.words import WordEngine

from test_nerve import octahedron


def dense_rank_oracle(columns, nrows):
    """Gaussian elimination over Fraction, written independently."""
    rows = [[Fraction(0)] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, v in col.items():
            rows[i][j] = Fraction(v)
    rank = 0
    row = 0
    for col in range(len(columns)):
        pivot = next(
            (r for r in range(row, nrows) if rows[r][col] != 0), None
        )
        if pivot is None:
            continue
        rows[row], rows[pivot] = rows[pivot], rows[row]
        rank += 1
        inv = 1 / rows[row][col]
        rows[row] = [x * inv for x in rows[row]]
        for r in range(nrows):
            if r != row and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[row])]
        row += 1
        if row == nrows:
            break
    return rank


class TestRank:
    def test_random_matrices_match_oracle(self):
        rng = random.Random(7)
        for _ in range(60):
            nrows = rng.randrange(1, 8)
            ncols = rng.randrange(1, 8)
            cols = []
            for _ in range(ncols):
                col = {
                    i: rng.randrange(-3, 4)
                    for i in range(nrows)
                    if rng.random() < 0.5
                }
                cols.append({i: v for i, v in col.items() if v})
            assert rank_sparse(cols) == dense_rank_oracle(cols, nrows)

    def test_identity(self):
        cols = [{i: 1} for i in range(5)]
        assert rank_sparse(cols) == 5

    def test_zero(self):
        assert rank_sparse([{}, {}]) == 0


class TestBetti:
    def test_circle(self):
        square = [(0,), (1,), (2,), (3,), (0, 1), (1, 2), (2, 3), (0, 3)]
        assert simplicial_homology(square).betti == (1, 1)

    def test_octahedron(self):
        L, _ = octahedron()
        assert simplicial_homology(L.ordered_simplices()).betti == (1, 0, 1)

    def test_disk_rel_circle(self):
        # cone over the 4-cycle, relative to the 4-cycle
        rim = [(0, 1), (1, 2), (2, 3), (0, 3)]
        cone = [s + (4,) for s in rim] + [(v,) + (4,) for v in range(4)]
        simplices = (
            [(v,) for v in range(5)] + rim + cone + [(4,)]
        )
        simplices = {tuple(sorted(set(s))) for s in simplices}
        relative = {(0,), (1,), (2,), (3,)} | set(rim)
        table = simplicial_homology(sorted(simplices), relative)
        assert table.betti == (0, 0, 1)

    def test_not_closed_relative(self):
        with pytest.raises(NotClosed):
            simplicial_homology([(0,), (1,), (0, 1)], relative=[(0, 1)])

    def test_missing_face_detected(self):
        with pytest.raises(NotClosed):
            ChainComplex([(0, 1)])

    def test_euler_consistency(self):
        L, _ = octahedron()
        table = simplicial_homology(L.ordered_simplices())
        f = L.f_vector()
        assert table.euler == f[0] - f[1] + f[2] == 2


class TestChiOrbCli:
    def test_values(self):
        from coxruins.system import chi_orb

        assert chi_orb(catalog.right_angled_square()) == 0
        assert chi_orb(catalog.square_all_4()) == Fraction(-1, 2)


class TestPairBetti:
    def test_dihedral_disk_pair(self):
        # the full dihedral complex relative to its boundary is a 2-disk
        # relative to its rim
        eng = WordEngine(catalog.dihedral(4))
        sigma = CellPoset(eng, (0, 1), 8)
        top = Cell((0, 1), b"")
        boundary = frozenset(sigma.faces(top))
        table = pair_betti(sigma, sigma.cells, boundary)
        assert table.betti == (0, 0, 1)

    def test_not_closed(self):
        eng = WordEngine(catalog.dihedral(4))
        sigma = CellPoset(eng, (0, 1), 8)
        top = Cell((0, 1), b"")
        with pytest.raises(NotClosed):
            pair_betti(sigma, sigma.cells, frozenset((top,)))


class TestExcision:
    def test_dihedral_product(self):
        eng = WordEngine(catalog.dihedral_product())
        rep = excision_check(eng, range(4), (0, 1), 0, 8)
        assert rep.basis_eq_ruin
        assert rep.basis_eq_restriction
        assert rep.alternating_sum == 0
        assert rep.ok

    def test_cross_pair(self):
        eng = WordEngine(catalog.dihedral_product())
        rep = excision_check(eng, range(4), (1, 3), 1, 8)
        assert rep.ok

    def test_infinite_truncation(self):
        # the chain-level identities hold on truncations too
        eng = WordEngine(catalog.example_triple())
        rep = excision_check(eng, range(3), (1, 2), 1, 6)
        assert rep.basis_eq_ruin
        assert rep.basis_eq_restriction
        assert rep.alternating_sum == 0

    def test_bad_arguments(self):
        eng = WordEngine(catalog.dihedral_product())
        with pytest.raises(ValueError):
            excision_check(eng, range(4), (0, 1), 2, 6)


class TestTopCycleRigidity:
    def test_top_cell_boundary_is_closed_sphere(self):
        # boundary of the top Coxeter cell of a finite even group: one
        # component, one top cycle
        eng = WordEngine(catalog.dihedral_product())
        sigma = CellPoset(eng, range(4), 8)
        top = Cell((0, 1, 2, 3), b"")
        bd = sigma.faces(top)
        pool, chains = sigma.order_complex(bd)
        cc = ChainComplex(chains)
        assert cc.betti_table().betti == (1, 0, 0, 1)
        assert cc.top_cycle_dimension() == 1

    def test_truncated_plane_rel_rim(self):
        # truncation of the plane tiled by a sphere-nerve system, relative
        # to the cells that touch unsafe vertices: one relative top cycle
        # per component
        eng = WordEngine(catalog.right_angled_square())
        R = 6
        sigma = CellPoset(eng, range(4), R)
        unsafe = {
            c for c in sigma.cells
            if any(len(w) + sigma.margin > R for w in sigma.members(c))
        }
        rim = sigma.closure(unsafe)
        pool, chains = sigma.order_complex()
        index = {c: i for i, c in enumerate(pool)}
        rim_ids = {index[c] for c in rim}
        cc = ChainComplex(
            chains, relative=lambda ch: all(i in rim_ids for i in ch)
        )
        assert cc.betti_table().betti == (0, 0, 1)
        assert cc.top_cycle_dimension() == 1
