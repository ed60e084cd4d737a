"""Nerves, links, flagness, and sphere certificates.

The nerve of a system has the generators as vertices and the nonempty
spherical subsets as simplices.  sphere_check issues a homology-sphere
style certificate (purity, pseudomanifold condition, connectivity, the
homology of a sphere, and recursively spherical vertex links); it is not a
full PL sphere recognizer and says so by keeping "inconclusive" available
for resource-capped runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import ExplosionGuard, FaceAbsent
from .homology import simplicial_homology
from .system import CoxeterMatrix, SphericalPoset


@dataclass(frozen=True)
class SimplicialComplex:
    """Face-closed set of nonempty vertex subsets."""

    vertices: tuple[int, ...]
    simplices: frozenset[frozenset[int]]

    @classmethod
    def from_simplices(cls, simplices: Iterable[Iterable[int]]) -> "SimplicialComplex":
        closed: set[frozenset[int]] = set()
        for s in simplices:
            fs = frozenset(s)
            if not fs:
                continue
            for k in range(1, len(fs) + 1):
                for face in combinations(sorted(fs), k):
                    closed.add(frozenset(face))
        vertices = tuple(sorted({v for s in closed for v in s}))
        return cls(vertices, frozenset(closed))

    @property
    def dimension(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def f_vector(self) -> list[int]:
        out = [0] * (self.dimension + 1)
        for s in self.simplices:
            out[len(s) - 1] += 1
        return out

    def has_edge(self, a: int, b: int) -> bool:
        return frozenset((a, b)) in self.simplices

    def ordered_simplices(self) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(s)) for s in self.simplices)

    def facets(self) -> list[frozenset[int]]:
        top = self.dimension + 1
        return sorted(
            (s for s in self.simplices if len(s) == top),
            key=lambda s: tuple(sorted(s)),
        )


def build_nerve(M: CoxeterMatrix, poset: SphericalPoset | None = None,
                restrict: Iterable[int] | None = None) -> SimplicialComplex:
    """Simplices are the nonempty spherical subsets (of `restrict` when given)."""
    poset = poset or SphericalPoset(M)
    allowed = None if restrict is None else frozenset(restrict)
    simplices = {
        frozenset(T)
        for T in poset
        if T and (allowed is None or T <= allowed)
    }
    vertices = tuple(sorted({v for s in simplices for v in s}))
    return SimplicialComplex(vertices, frozenset(simplices))


def is_flag(L: SimplicialComplex):
    """(True, None) or (False, first violating clique, smallest first)."""
    by_size = sorted(L.simplices, key=len)
    for s in by_size:
        base = sorted(s)
        for v in L.vertices:
            if v in s:
                continue
            if all(L.has_edge(v, u) for u in base):
                cand = s | {v}
                if cand not in L.simplices:
                    return False, frozenset(cand)
    return True, None


def link(L: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    f = frozenset(face)
    if f not in L.simplices:
        raise FaceAbsent(f"face {sorted(f)} is not a simplex")
    simplices = {s - f for s in L.simplices if f < s}
    vertices = tuple(sorted({v for s in simplices for v in s}))
    return SimplicialComplex(vertices, frozenset(simplices))


@dataclass(frozen=True)
class SphereVerdict:
    verdict: str                 # "pass" | "fail" | "inconclusive"
    detail: str

    def __bool__(self) -> bool:
        return self.verdict == "pass"


def sphere_check(L: SimplicialComplex, dim: int) -> SphereVerdict:
    """Certificate that L looks like a triangulation of the dim-sphere.

    Checks: pure, every codimension-1 face in exactly two facets, facet
    graph connected, the homology of S^dim, and recursively spherical vertex
    links.  Passing certifies a homology-sphere-style condition only.
    """
    try:
        return _sphere_check(L, dim)
    except ExplosionGuard as exc:
        return SphereVerdict("inconclusive", f"resource cap: {exc}")


def _sphere_check(L: SimplicialComplex, dim: int) -> SphereVerdict:
    if not L.simplices:
        if dim == -1:
            return SphereVerdict("pass", "empty complex")
        return SphereVerdict("fail", "empty complex")
    if L.dimension != dim:
        return SphereVerdict("fail", f"dimension {L.dimension} != {dim}")
    facets = L.facets()
    for s in L.simplices:
        if not any(s <= f for f in facets):
            return SphereVerdict(
                "fail", f"not pure: {sorted(s)} is not in any facet"
            )
    if dim == 0:
        if len(L.vertices) == 2:
            return SphereVerdict("pass", "two points")
        return SphereVerdict("fail", f"{len(L.vertices)} points")
    ridge_count: dict[frozenset, int] = {}
    for f in facets:
        for v in f:
            r = f - {v}
            ridge_count[r] = ridge_count.get(r, 0) + 1
    bad = next((r for r, c in ridge_count.items() if c != 2), None)
    if bad is not None:
        return SphereVerdict(
            "fail",
            f"face {sorted(bad)} lies in {ridge_count[bad]} facets, expected 2",
        )
    # facet adjacency connectivity
    index = {f: i for i, f in enumerate(facets)}
    parent = list(range(len(facets)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_ridge: dict[frozenset, list[int]] = {}
    for f in facets:
        for v in f:
            by_ridge.setdefault(f - {v}, []).append(index[f])
    for pair in by_ridge.values():
        a = find(pair[0])
        for j in pair[1:]:
            b = find(j)
            parent[b] = a
    if len({find(i) for i in range(len(facets))}) != 1:
        return SphereVerdict("fail", "facet adjacency graph disconnected")
    table = simplicial_homology(L.ordered_simplices())
    expected = tuple(
        1 if d in (0, dim) else 0 for d in range(dim + 1)
    )
    if table.betti != expected:
        return SphereVerdict(
            "fail", f"betti {table.betti} != {expected}"
        )
    for v in L.vertices:
        sub = _sphere_check(link(L, (v,)), dim - 1)
        if sub.verdict != "pass":
            return SphereVerdict(
                sub.verdict, f"link of vertex {v}: {sub.detail}"
            )
    return SphereVerdict("pass", "homology-sphere certificate holds")
