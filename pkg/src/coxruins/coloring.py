"""Painting one-letter ruins by coset tuples.

The color of a vertex w is the tuple, over spherical subsets T containing
the ruin letter t, of the coset (letters of w outside T deleted) * W_{T-t}
inside W_T.  Colors are stored sparsely: only coordinates holding a
nontrivial coset appear.  Components of the ruin boundary are monochromatic
and colors carry a parity (the t-count mod 2), so collars classify as even
or odd; the intersection certificates below verify how collars meet.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .cells import (Cell, BoundaryCollar, CellPoset, Ruin, boundary_collar,
                    collar_margin, coset_components)
from .errors import NotEven, NotFlag, TruncationUnsafe, TypeMismatch
from .nerve import build_nerve, is_flag
from .system import INF
from .words import Word, WordEngine

#: the all-trivial color
EBAR: tuple = ()

Color = tuple


class Palette:
    """Color coordinates and the group action for one (U, t) painting."""

    def __init__(self, engine: WordEngine, sigma: CellPoset, t: int):
        system = engine.system
        if not system.is_even:
            raise NotEven("painting requires an even system")
        self.engine = engine
        self.t = t
        self.U = sigma.U
        for s in sigma.U:
            if system.label(s, t) == INF:
                raise TypeMismatch(
                    "painting requires U to be the star of the letter: "
                    f"generator {system.generators[s]} has no relation with "
                    f"{system.generators[t]}"
                )
        self.coords = [typ for typ in sigma.types if t in typ]
        self._groups = {}
        self._minrep = {}
        for typ in self.coords:
            fg = engine.finite_group(typ)
            self._groups[typ] = fg
            self._minrep[typ] = fg.min_rep_table(set(typ) - {t})

    def act(self, w: Word, color: Color) -> Color:
        """Coordinate-wise left multiplication by the letters of w that
        survive the projection into each coordinate's subgroup."""
        current = dict(color)
        out = []
        for typ in self.coords:
            fg = self._groups[typ]
            g = fg.fold(w)
            rep = current.get(typ)
            if rep:
                g = fg.fold(rep, start=g)
            m = self._minrep[typ][g]
            if m:
                out.append((typ, fg.elements[m]))
        return tuple(out)

    def color(self, w: Word) -> Color:
        return self.act(w, EBAR)

    def parity(self, w: Word) -> int:
        return w.count(self.t) % 2

    def color_parity(self, color: Color) -> int:
        """Parity read off a color: the t-coordinate is nontrivial iff odd."""
        key = (self.t,)
        for typ, rep in color:
            if typ == key:
                return 1
        return 0


@dataclass
class PaintedRuin:
    """A painted one-letter ruin with its boundary components and collars."""

    ruin: Ruin
    t: int
    palette: Palette
    color_of: dict[Word, Color]
    components: dict[Word, list[Word]]
    component_color: dict[Word, Color]
    component_parity: dict[Word, int]
    _collars: dict = field(default_factory=dict)

    @property
    def sigma(self) -> CellPoset:
        return self.ruin.sigma

    @property
    def safe_bound(self) -> int:
        return self.sigma.radius - collar_margin(self.sigma, self.t)

    def colors(self) -> set[Color]:
        return set(self.component_color.values())

    def component_keys(self, parity: int | None = None) -> list[Word]:
        keys = sorted(self.components)
        if parity is None:
            return keys
        return [k for k in keys if self.component_parity[k] == parity]

    def collar(self, key: Word, bound: int | None = None) -> BoundaryCollar:
        bound = self.safe_bound if bound is None else bound
        got = self._collars.get((key, bound))
        if got is None:
            got = boundary_collar(self.ruin, self.components[key], self.t,
                                  bound=bound)
            self._collars[(key, bound)] = got
        return got

    def collar_cells(self, keys: Iterable[Word],
                     bound: int | None = None) -> frozenset[Cell]:
        out: set[Cell] = set()
        for key in keys:
            try:
                out |= self.collar(key, bound).carrier
            except TruncationUnsafe:
                continue
        return frozenset(out)


def paint(ruin: Ruin, t: int) -> PaintedRuin:
    """Color every vertex of a one-letter ruin component."""
    if ruin.T != frozenset((t,)):
        raise TypeMismatch("paint expects the (U, {t})-ruin")
    sigma = ruin.sigma
    engine = sigma.engine
    flag, clique = is_flag(build_nerve(engine.system, sigma.poset))
    if not flag:
        raise NotFlag(f"nerve is not flag: clique {sorted(clique)}")
    palette = Palette(engine, sigma, t)
    vertices = sigma.vertices()
    for w in vertices:
        if not set(w) <= set(sigma.ball.letters):
            raise TypeMismatch("ruin vertices must lie in W_U")
    color_of = {w: palette.color(w) for w in vertices}
    comps = coset_components(sigma, vertices, sorted(ruin.U - {t}))
    component_color = {key: color_of[key] for key in comps}
    component_parity = {key: palette.parity(key) for key in comps}
    return PaintedRuin(
        ruin=ruin,
        t=t,
        palette=palette,
        color_of=color_of,
        components=comps,
        component_color=component_color,
        component_parity=component_parity,
    )


# ---------------------------------------------------------------------------
# collar intersection certificates
# ---------------------------------------------------------------------------


@dataclass
class EvenIntersection:
    """Certificate for the intersection of two even boundary collars.

    The intersection must be the orbit, under the subgroup generated by the
    common commuting neighbors of s and t, of the chamber overlap; the
    region-restricted cell set is checked against that pattern on both
    sides, and mapped cell-by-cell onto a freshly built truncation of the
    Davis complex of (W', U_st)."""

    ok: bool
    s: int | None = None
    u: Word | None = None
    base: Word | None = None
    u_st: tuple[int, ...] = ()
    zbound: int = -1
    intersection: frozenset = frozenset()
    pattern: frozenset = frozenset()
    mapping: dict = field(default_factory=dict)
    witness: dict | None = None
    w_prime_infinite: bool | None = None


def transition_data(p: PaintedRuin, w1: Word, w2: Word):
    """The (s, u) pair of the transition between two even vertices of
    different boundary components; witness dict on structural failure."""
    engine = p.sigma.engine
    system = engine.system
    t = p.t
    w = engine.mult_word(engine.inverse(w1), w2)
    sup = engine.support(w)
    if t not in sup:
        return None, {"reason": "transition contains no ruin letter",
                      "w": list(w)}
    s_prime = [s for s in sorted(p.ruin.U)
               if s != t and 2 < system.label(s, t) != INF]
    hits = [s for s in s_prime if s in sup]
    if len(hits) != 1:
        return None, {"reason": "transition must touch exactly one branching"
                                " generator", "w": list(w),
                      "hits": hits}
    s = hits[0]
    x = engine.normal_form(bytes(c for c in w if c in (s, t)))
    q = engine.normal_form(bytes(c for c in w if c not in (s, t)))
    if engine.mult_word(x, q) != w:
        return None, {"reason": "transition does not split into a dihedral "
                                "part times a commuting part",
                      "w": list(w), "x": list(x), "q": list(q)}
    if not engine.is_t_even(x, s, t):
        return None, {"reason": "dihedral part of the transition is not "
                                "t-even", "x": list(x)}
    u = x if t in engine.right_descents(x) else engine.multiply(x, s)
    return (s, u, w), None


def u_st_letters(p: PaintedRuin, s: int) -> tuple[int, ...]:
    system = p.sigma.engine.system
    t = p.t
    return tuple(
        r for r in range(system.rank)
        if r not in (s, t)
        and system.label(r, t) == 2 and system.label(r, s) == 2
    )


def even_pair_certificate(p: PaintedRuin, key1: Word, key2: Word,
                          bound: int | None = None,
                          base_pair: tuple[Word, Word] | None = None,
                          ) -> EvenIntersection:
    """Verify the intersection of the collars of two even components.

    key1/key2 are component keys.  The transition is recovered from a shared
    cell unless base_pair fixes the two base vertices explicitly (then the
    orbit pattern is required to be present even if the computed
    intersection came out empty).  Raises TruncationUnsafe when no region of
    the ball is provably complete."""
    sigma = p.sigma
    engine = sigma.engine
    t = p.t
    bound = p.safe_bound if bound is None else bound
    D1 = p.collar(key1, bound)
    D2 = p.collar(key2, bound)
    inter = D1.carrier & D2.carrier
    if base_pair is not None:
        w1, w2 = base_pair
    else:
        if not inter:
            return EvenIntersection(ok=True, base=key1, zbound=-1,
                                    intersection=frozenset(),
                                    pattern=frozenset())
        # recover the transition from the shared cell closest to the origin
        sample = min(
            inter,
            key=lambda c: (min((len(v), v) for v in D1.sources[c]), c),
        )
        w1 = min(D1.sources[sample], key=lambda v: (len(v), v))
        w2 = min(D2.sources[sample], key=lambda v: (len(v), v))
    data, witness = transition_data(p, w1, w2)
    if data is None:
        return EvenIntersection(ok=False, base=w1, witness=witness,
                                intersection=frozenset(inter))
    s, u, _ = data
    ust = u_st_letters(p, s)
    zbound = bound - len(w1) - len(u)
    if zbound < 0:
        raise TruncationUnsafe(
            "no complete region for the even-pair certificate; raise radius"
        )
    types_ge = [typ for typ in sigma.types if s in typ and t in typ]

    # membership test: every intersection cell must be of type containing
    # both letters and lie in the W'-orbit of the base chamber overlap
    w1_inv = engine.inverse(w1)
    z_of: dict[Cell, Word] = {}
    for c in sorted(inter):
        if s not in c.typ or t not in c.typ:
            return EvenIntersection(
                ok=False, s=s, u=u, base=w1, u_st=ust,
                intersection=frozenset(inter),
                witness={"reason": "intersection cell type misses the "
                                   "dihedral letters",
                         "cell": _cell_json(sigma, c)})
        y = engine.mult_word(w1_inv, c.rep)
        z = engine.coset_min_rep(y, c.typ)
        if not engine.support(z) <= set(ust):
            return EvenIntersection(
                ok=False, s=s, u=u, base=w1, u_st=ust,
                intersection=frozenset(inter),
                witness={"reason": "intersection cell is outside the orbit "
                                   "of the chamber overlap",
                         "cell": _cell_json(sigma, c), "z": list(z)})
        z_of[c] = z

    # pattern completeness: the orbit within the safe region must be present
    zball = engine.ball(zbound, ust)
    pattern: set[Cell] = set()
    for z in zball:
        base_vertex = engine.mult_word(w1, z)
        for typ in types_ge:
            c = Cell(typ, sigma.ball.min_rep(base_vertex, typ))
            pattern.add(c)
            if c not in inter:
                return EvenIntersection(
                    ok=False, s=s, u=u, base=w1, u_st=ust, zbound=zbound,
                    intersection=frozenset(inter), pattern=frozenset(pattern),
                    witness={"reason": "orbit cell missing from the collar "
                                       "intersection",
                             "cell": _cell_json(sigma, c), "z": list(z)})

    region = {c for c, z in z_of.items() if len(z) <= zbound}
    if region != pattern:
        diff = region.symmetric_difference(pattern)
        return EvenIntersection(
            ok=False, s=s, u=u, base=w1, u_st=ust, zbound=zbound,
            intersection=frozenset(inter), pattern=frozenset(pattern),
            witness={"reason": "region mismatch between intersection and "
                               "orbit pattern",
                     "cells": [_cell_json(sigma, c) for c in sorted(diff)]})

    mapping = {
        c: Cell(tuple(v for v in c.typ if v not in (s, t)), z_of[c])
        for c in sorted(region)
    }
    return EvenIntersection(
        ok=True, s=s, u=u, base=w1, u_st=ust, zbound=zbound,
        intersection=frozenset(inter), pattern=frozenset(pattern),
        mapping=mapping,
        w_prime_infinite=frozenset(ust) not in sigma.poset if ust else False,
    )


def check_iso_onto_fresh(p: PaintedRuin, cert: EvenIntersection):
    """Machine-check that the certified mapping is a cell-poset isomorphism
    onto a freshly built truncation of the Davis complex of (W', U_st).

    Returns (ok, detail)."""
    if not cert.ok:
        return False, "certificate not established"
    sigma = p.sigma
    engine = sigma.engine
    if cert.zbound < 0:
        return True, "empty intersection"
    fresh = CellPoset(
        engine, cert.u_st, cert.zbound + _max_longest(sigma, cert.u_st),
        vertex_letters=cert.u_st, poset=sigma.poset,
    )
    slice_cells = {c for c in fresh.cells if len(c.rep) <= cert.zbound}
    image = set(cert.mapping.values())
    if len(image) != len(cert.mapping):
        return False, "mapping is not injective"
    if image != slice_cells:
        return False, (
            f"image has {len(image)} cells, fresh truncation slice has "
            f"{len(slice_cells)}"
        )
    items = sorted(cert.mapping)
    for i, c in enumerate(items):
        for d in items[i + 1:]:
            if sigma.leq(c, d) != fresh.leq(cert.mapping[c], cert.mapping[d]):
                return False, f"inclusion not preserved on ({c}, {d})"
            if sigma.leq(d, c) != fresh.leq(cert.mapping[d], cert.mapping[c]):
                return False, f"inclusion not preserved on ({d}, {c})"
    for c, img in cert.mapping.items():
        if img.typ != tuple(v for v in c.typ if v not in (cert.s, p.t)):
            return False, f"type map violated on {c}"
    return True, (
        f"isomorphism onto {len(slice_cells)} cells of the fresh truncation"
    )


def _max_longest(sigma: CellPoset, letters: Iterable[int]) -> int:
    letters = frozenset(letters)
    return max(
        (sigma.poset.longest_length(T) for T in sigma.poset.subsets_of(letters)),
        default=0,
    )


@dataclass
class OddEvenIntersection:
    ok: bool
    odd_key: Word
    cells: frozenset
    inner: frozenset
    witness: dict | None = None


def odd_vs_evens(p: PaintedRuin, odd_key: Word,
                 extra_odd_keys: Iterable[Word] = (),
                 bound: int | None = None) -> OddEvenIntersection:
    """Check that an odd collar meets the union of all even collars (plus
    optionally some other odd collars) exactly in its inner boundary."""
    bound = p.safe_bound if bound is None else bound
    D = p.collar(odd_key, bound - 1)
    others = [k for k in p.component_keys(parity=0)]
    others += [k for k in extra_odd_keys if k != odd_key]
    union = p.collar_cells(others, bound)
    inter = D.carrier & union
    if inter == D.inner:
        return OddEvenIntersection(True, odd_key, frozenset(inter),
                                   frozenset(D.inner))
    diff = inter.symmetric_difference(D.inner)
    return OddEvenIntersection(
        False, odd_key, frozenset(inter), frozenset(D.inner),
        witness={"reason": "odd collar does not meet the evens in its inner "
                           "boundary",
                 "cells": [_cell_json(p.sigma, c) for c in sorted(diff)]})


def collar_intersection(p: PaintedRuin, F: Word | Iterable[Word],
                        G: Word | Iterable[Word],
                        bound: int | None = None):
    """Cells common to two collars (or collar unions), plus a structural
    certificate when one applies: an EvenIntersection for two distinct even
    components, an OddEvenIntersection when F is odd and G is the union of
    all even components."""
    bound = p.safe_bound if bound is None else bound
    f_keys = [F] if isinstance(F, bytes) else sorted(F)
    g_keys = [G] if isinstance(G, bytes) else sorted(G)
    cells = p.collar_cells(f_keys, bound) & p.collar_cells(g_keys, bound)
    certificate = None
    if len(f_keys) == 1 and len(g_keys) == 1 and f_keys != g_keys:
        par = p.component_parity
        if par[f_keys[0]] == 0 and par[g_keys[0]] == 0:
            certificate = even_pair_certificate(p, f_keys[0], g_keys[0], bound)
    if (len(f_keys) == 1 and p.component_parity[f_keys[0]] == 1
            and set(g_keys) == set(p.component_keys(parity=0))):
        certificate = odd_vs_evens(p, f_keys[0], bound=bound)
    return cells, certificate


@dataclass
class ComponentCorrespondence:
    ok: bool
    key: Word
    mapping: dict
    detail: str


def boundary_component_correspondence(p: PaintedRuin, key: Word,
                                      bound: int | None = None,
                                      ) -> ComponentCorrespondence:
    """Cells of one boundary component correspond 1-1, preserving type and
    inclusion, with cells of the Davis complex of (W_{U-t}, U-t)."""
    sigma = p.sigma
    engine = sigma.engine
    t = p.t
    rest = tuple(sorted(p.ruin.U - {t}))
    bound = p.safe_bound if bound is None else bound
    zbound = bound - len(key)
    if zbound < 0:
        raise TruncationUnsafe("component base exceeds the safe bound")
    key_inv = engine.inverse(key)
    comp_vertices = set(p.components[key])
    cells = set()
    for c in p.ruin.boundary:
        if not set(c.typ) <= set(rest):
            continue
        if sigma.ball.min_rep(c.rep, rest) != key:
            continue
        z = engine.mult_word(key_inv, c.rep)
        if len(z) <= zbound:
            cells.add((c, z))
    fresh = CellPoset(engine, rest, zbound + _max_longest(sigma, rest),
                      vertex_letters=rest, poset=sigma.poset)
    slice_cells = {c for c in fresh.cells if len(c.rep) <= zbound}
    mapping = {c: Cell(c.typ, z) for c, z in sorted(cells)}
    image = set(mapping.values())
    if len(image) != len(mapping):
        return ComponentCorrespondence(False, key, mapping,
                                       "correspondence not injective")
    if image != slice_cells:
        return ComponentCorrespondence(
            False, key, mapping,
            f"image {len(image)} cells vs fresh slice {len(slice_cells)}")
    items = sorted(mapping)
    for i, c in enumerate(items):
        for d in items[i + 1:]:
            if sigma.leq(c, d) != fresh.leq(mapping[c], mapping[d]) or \
                    sigma.leq(d, c) != fresh.leq(mapping[d], mapping[c]):
                return ComponentCorrespondence(
                    False, key, mapping,
                    f"inclusion not preserved on ({c}, {d})")
    _ = comp_vertices
    return ComponentCorrespondence(
        True, key, mapping,
        f"{len(mapping)} cells correspond to the fresh truncation")


def _cell_json(sigma: CellPoset, c: Cell) -> dict:
    gens = sigma.system.generators
    return {"type": [gens[i] for i in c.typ], "rep": [gens[i] for i in c.rep]}
