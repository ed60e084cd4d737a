"""Finite truncations of the Davis complex in its Coxeter cellulation.

A cell is a spherical coset w*W_T, keyed by its minimal-length representative
and its type T.  The truncation at a radius keeps a cell iff every coset
member lies in the ball, which for a minimal representative w means
len(w) + longest(T) <= radius.  Geometric realizations are order complexes:
a "space" is always the set of chains of a cell subset, so subcomplexes,
pairs, and intersections reduce to set operations on cells.

Truncated path components are computed two ways: from the 1-skeleton (the
generic components operation) and as traces of cosets of a standard
subgroup.  The coset trace is what the collar machinery uses, because a
graph component of a truncated complex can fragment near the ball boundary
while the coset trace cannot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import TruncationUnsafe, TypeMismatch
from .system import CoxeterMatrix, SphericalPoset
from .words import Ball, Word, WordEngine


class Cell(NamedTuple):
    typ: tuple[int, ...]
    rep: Word


def _sorted_tuple(T: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(T))


class CellPoset:
    """Cells of the truncated subcomplex with types inside U.

    vertex_letters restricts the vertex set to the standard subgroup they
    generate (used to build the component of the identity directly); by
    default the vertex set is the whole ball of W.
    """

    def __init__(self, engine: WordEngine, U: Iterable[int], radius: int, *,
                 vertex_letters: Iterable[int] | None = None,
                 poset: SphericalPoset | None = None,
                 ball_cap: int | None = None):
        self.engine = engine
        self.system = engine.system
        self.U = frozenset(U)
        self.radius = radius
        self.poset = poset or SphericalPoset(self.system)
        self.ball = engine.ball(radius, vertex_letters, cap=ball_cap)
        self.types = [
            _sorted_tuple(T) for T in self.poset.subsets_of(self.U)
        ]
        self.longest = {
            t: self.poset.longest_length(frozenset(t)) for t in self.types
        }
        cells: set[Cell] = set()
        for w in self.ball:
            k = len(w)
            descents = {
                s
                for s in self.ball.letters
                if (v := self.ball.table.get((w, s))) is not None and len(v) < k
            }
            for t in self.types:
                if k + self.longest[t] <= radius and not (descents & set(t)):
                    cells.add(Cell(t, w))
        self.cells = cells
        self._above: dict[Cell, frozenset[Cell]] = {}

    @property
    def margin(self) -> int:
        """Length of the longest element among spherical subsets of U."""
        return max(self.longest.values(), default=0)

    def vertices(self) -> list[Word]:
        return [c.rep for c in self.cells if not c.typ]

    def cells_sorted(self) -> list[Cell]:
        return sorted(self.cells, key=lambda c: (len(c.typ), c.typ, c.rep))

    def min_rep(self, w: Word, T: Iterable[int]) -> Word:
        return self.ball.min_rep(w, T)

    def cell_of(self, w: Word, T: Iterable[int]) -> Cell | None:
        c = Cell(_sorted_tuple(T), self.ball.min_rep(w, T))
        return c if c in self.cells else None

    def members(self, cell: Cell) -> set[Word]:
        got = self.ball.coset(cell.rep, cell.typ)
        if got is None:
            raise TruncationUnsafe(f"coset of {cell} leaks out of the ball")
        return got

    def covers_above(self, cell: Cell) -> list[Cell]:
        out = []
        ct = set(cell.typ)
        for t in self.types:
            if len(t) != len(cell.typ) + 1 or not ct <= set(t):
                continue
            upper = Cell(t, self.ball.min_rep(cell.rep, t))
            if upper in self.cells:
                out.append(upper)
        return out

    def above(self, cell: Cell) -> frozenset[Cell]:
        got = self._above.get(cell)
        if got is None:
            acc: set[Cell] = set()
            for cover in self.covers_above(cell):
                acc.add(cover)
                acc |= self.above(cover)
            got = frozenset(acc)
            self._above[cell] = got
        return got

    def leq(self, c1: Cell, c2: Cell) -> bool:
        return c1 == c2 or c2 in self.above(c1)

    def faces(self, cell: Cell) -> set[Cell]:
        """All proper faces of a cell (cells strictly below it)."""
        out: set[Cell] = set()
        members = self.members(cell)
        ct = set(cell.typ)
        for t in self.types:
            if not set(t) < ct:
                continue
            for v in members:
                out.add(Cell(t, self.ball.min_rep(v, t)))
        return out

    def closure(self, cells: Iterable[Cell]) -> frozenset[Cell]:
        """Downward closure: the cells plus all their faces."""
        acc: set[Cell] = set()
        for c in cells:
            if c not in acc:
                acc.add(c)
                acc |= self.faces(c)
        return frozenset(acc)

    def order_complex(self, cells: Iterable[Cell] | None = None,
                      ) -> tuple[list[Cell], list[tuple[int, ...]]]:
        """Cells (indexed) and all chains of the inclusion order as id tuples.

        Ids increase with poset rank, so chains are strictly increasing
        tuples and boundary signs are canonical by position.
        """
        pool = self.cells_sorted() if cells is None else sorted(
            set(cells), key=lambda c: (len(c.typ), c.typ, c.rep)
        )
        index = {c: i for i, c in enumerate(pool)}
        pool_set = set(pool)
        up: list[list[int]] = []
        for c in pool:
            ups = sorted(
                index[a] for a in self.above(c) if a in pool_set
            )
            up.append(ups)
        chains: list[tuple[int, ...]] = []
        stack: list[int] = []

        def grow(i: int) -> None:
            stack.append(i)
            chains.append(tuple(stack))
            for j in up[i]:
                grow(j)
            stack.pop()

        for i in range(len(pool)):
            grow(i)
        return pool, chains


@dataclass(frozen=True)
class Ruin:
    """The (U, T)-ruin of a truncated complex: omega is the closure of the
    closed cells with type containing T, boundary its cells with type not
    containing T, hat the complementary cell set of the ambient complex."""

    sigma: CellPoset
    T: frozenset
    omega: frozenset[Cell]
    boundary: frozenset[Cell]
    hat: frozenset[Cell]

    @property
    def U(self) -> frozenset:
        return self.sigma.U


def build_sigma(engine: WordEngine, U: Iterable[int], radius: int, *,
                vertex_letters: Iterable[int] | None = None,
                poset: SphericalPoset | None = None,
                ball_cap: int | None = None) -> CellPoset:
    return CellPoset(engine, U, radius, vertex_letters=vertex_letters,
                     poset=poset, ball_cap=ball_cap)


def build_ruin(sigma: CellPoset, T: Iterable[int]) -> Ruin:
    T = frozenset(T)
    if not T <= sigma.U:
        raise TypeMismatch(
            f"type {sorted(T)} is not contained in U={sorted(sigma.U)}"
        )
    if T not in sigma.poset:
        raise TypeMismatch(f"type {sorted(T)} is not spherical")
    marked = [c for c in sigma.cells if T <= set(c.typ)]
    omega = sigma.closure(marked)
    boundary = frozenset(c for c in omega if not T <= set(c.typ))
    hat = frozenset(c for c in sigma.cells if not T <= set(c.typ))
    return Ruin(sigma, T, omega, boundary, hat)


def components(sigma: CellPoset, cells: Iterable[Cell],
               edge_types: Iterable[int]) -> list[frozenset[Word]]:
    """Partition of the vertex set by the 1-skeleton restricted to edges of
    the given types."""
    cells = list(cells)
    verts = [c.rep for c in cells if not c.typ]
    edge_types = set(edge_types)
    parent: dict[Word, Word] = {v: v for v in verts}

    def find(v: Word) -> Word:
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    for c in cells:
        if len(c.typ) == 1 and c.typ[0] in edge_types:
            s = c.typ[0]
            a = c.rep
            b = sigma.ball.table.get((a, s))
            if b is None or b not in parent or a not in parent:
                continue
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    groups: dict[Word, set[Word]] = {}
    for v in verts:
        groups.setdefault(find(v), set()).add(v)
    return sorted((frozenset(g) for g in groups.values()),
                  key=lambda g: min(g))


def coset_components(sigma: CellPoset, vertices: Iterable[Word],
                     letters: Iterable[int]) -> dict[Word, list[Word]]:
    """Group vertices by the coset of the standard subgroup the letters
    generate; keys are minimal coset representatives.  This is the
    truncation-stable notion of path component used by the collar theory."""
    letters = tuple(sorted(letters))
    out: dict[Word, list[Word]] = {}
    for w in vertices:
        key = sigma.ball.min_rep(w, letters)
        out.setdefault(key, []).append(w)
    for group in out.values():
        group.sort()
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class BoundaryCollar:
    """Union of chamber translates over one boundary-component's vertices.

    carrier holds the cells of those chambers; inner the carrier cells whose
    type contains the ruin letter; sources maps each cell to the vertices
    whose chamber contributed it.
    """

    component_key: Word
    t: int
    vertices: tuple[Word, ...]
    carrier: frozenset[Cell]
    inner: frozenset[Cell]
    sources: dict[Cell, tuple[Word, ...]]


def chamber_types(sigma: CellPoset, t: int) -> list[tuple[int, ...]]:
    """Types of the chamber piece meeting the one-letter ruin: spherical
    V inside U with V + {t} spherical as well."""
    out = []
    for typ in sigma.types:
        if frozenset(typ) | {t} in sigma.poset:
            out.append(typ)
    return out


def chamber_cells(sigma: CellPoset, w: Word, t: int,
                  types: list[tuple[int, ...]] | None = None) -> set[Cell]:
    types = chamber_types(sigma, t) if types is None else types
    out = set()
    for typ in types:
        out.add(Cell(typ, sigma.ball.min_rep(w, typ)))
    return out


def collar_margin(sigma: CellPoset, t: int) -> int:
    return max(
        (sigma.longest[typ] for typ in chamber_types(sigma, t)), default=0
    )


def boundary_collar(ruin: Ruin, component: Iterable[Word], t: int, *,
                    bound: int | None = None) -> BoundaryCollar:
    """Collar of one boundary component, restricted to chamber translates
    that fit entirely inside the ball (vertices of length <= bound)."""
    if ruin.T != frozenset((t,)):
        raise TypeMismatch("collars are defined for one-letter ruins")
    sigma = ruin.sigma
    margin = collar_margin(sigma, t)
    if bound is None:
        bound = sigma.radius - margin
    safe = sorted(w for w in component if len(w) + margin <= sigma.radius
                  and len(w) <= bound)
    if not safe:
        raise TruncationUnsafe(
            "no chamber translate of this component fits inside the ball; "
            "raise the radius"
        )
    types = chamber_types(sigma, t)
    carrier: set[Cell] = set()
    sources: dict[Cell, list[Word]] = {}
    for w in safe:
        for c in chamber_cells(sigma, w, t, types):
            carrier.add(c)
            sources.setdefault(c, []).append(w)
    inner = frozenset(c for c in carrier if t in c.typ)
    key = sigma.ball.min_rep(safe[0], tuple(sorted(ruin.U - {t})))
    return BoundaryCollar(
        component_key=key,
        t=t,
        vertices=tuple(safe),
        carrier=frozenset(carrier),
        inner=inner,
        sources={c: tuple(v) for c, v in sources.items()},
    )
