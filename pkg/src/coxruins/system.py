"""Coxeter matrices, finite-type recognition, and the spherical poset.

A system is described by a symmetric integer matrix with 1 on the diagonal
and off-diagonal labels that are either >= 2 or 0, the file encoding of an
infinite label.  Internally infinite labels are held as math.inf so that
comparisons like ``2 < m < inf`` read naturally.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import ExplosionGuard, InvalidMatrix, NotEven, ParseError

INF = math.inf

#: cap on the number of spherical subsets enumerated by spherical_poset
SPHERICAL_CAP = 1 << 20


@dataclass(frozen=True)
class CoxeterMatrix:
    """A validated Coxeter matrix.

    generators: ordered generator names; entries: the label matrix with
    math.inf marking the absence of a relation.
    """

    generators: tuple[str, ...]
    entries: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise InvalidMatrix("duplicate generator names")
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise InvalidMatrix("matrix shape does not match generator count")
        for i in range(n):
            if self.entries[i][i] != 1:
                raise InvalidMatrix("diagonal entry must be 1", (i, i))
            for j in range(n):
                m = self.entries[i][j]
                if m != self.entries[j][i]:
                    raise InvalidMatrix("matrix must be symmetric", (i, j))
                if i != j and m != INF and (m < 2 or int(m) != m):
                    raise InvalidMatrix(
                        "off-diagonal labels must be integers >= 2 or infinite",
                        (i, j),
                    )

    @property
    def rank(self) -> int:
        return len(self.generators)

    def label(self, i: int, j: int) -> float:
        return self.entries[i][j]

    def index(self, name: str) -> int:
        return self.generators.index(name)

    @property
    def is_even(self) -> bool:
        n = self.rank
        return all(
            self.entries[i][j] == INF or self.entries[i][j] % 2 == 0
            for i in range(n)
            for j in range(i + 1, n)
        )

    def kernel_rows(self) -> list[list[int]]:
        """Integer rows with 0 standing for an infinite label."""
        return [
            [0 if m == INF else int(m) for m in row] for row in self.entries
        ]

    def to_json_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "matrix": self.kernel_rows(),
        }

    def digest(self) -> str:
        blob = json.dumps(self.to_json_dict(), separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:12]

    def names(self, subset: Iterable[int]) -> str:
        return "{" + ",".join(self.generators[i] for i in sorted(subset)) + "}"


def matrix_from_rows(generators, rows) -> CoxeterMatrix:
    """Build a CoxeterMatrix from integer rows using the 0 = infinity encoding."""
    entries = tuple(
        tuple(INF if m == 0 else float(m) for m in row) for row in rows
    )
    return CoxeterMatrix(tuple(generators), entries)


def parse_system(text: str) -> CoxeterMatrix:
    """Parse the JSON input format: {"generators": [...], "matrix": [[...]]}."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("top-level value must be an object")
    try:
        generators = data["generators"]
        rows = data["matrix"]
    except (KeyError, TypeError) as exc:
        raise ParseError("object must contain 'generators' and 'matrix'") from exc
    if not isinstance(generators, list) or not all(
        isinstance(g, str) for g in generators
    ):
        raise ParseError("'generators' must be a list of strings")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("'matrix' must be a list of integer rows")
    for r in rows:
        for m in r:
            if not isinstance(m, int) or isinstance(m, bool) or m < 0:
                raise ParseError("matrix entries must be nonnegative integers")
    return matrix_from_rows(generators, rows)


# ---------------------------------------------------------------------------
# finite-type recognition
#
# A subset is spherical iff each connected component of its diagram (edges
# where the label is 3 or more, or infinite) appears in the classification of
# finite irreducible diagrams.  Orders and longest-element lengths (= number
# of positive reflections) come from the classification table; no floating
# point is involved.
# ---------------------------------------------------------------------------

_E_ORDERS = {6: (51840, 36), 7: (2903040, 63), 8: (696729600, 120)}


def _classify_component(M: CoxeterMatrix, comp: list[int]):
    """Return (order, longest_length) for a finite irreducible component,
    or None when the component generates an infinite group."""
    n = len(comp)
    if n == 1:
        return 2, 1
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            m = M.label(comp[a], comp[b])
            if m == INF:
                return None
            if m >= 3:
                edges.append((a, b, int(m)))
    if n == 2:
        m = edges[0][2]
        return 2 * m, m
    # rank >= 3: the diagram must be a tree (a connected graph on n vertices
    # with n-1 edges)
    if len(edges) != n - 1:
        return None
    deg = [0] * n
    for a, b, _ in edges:
        deg[a] += 1
        deg[b] += 1
    high = sorted(m for _, _, m in edges if m > 3)
    branch = [v for v in range(n) if deg[v] >= 3]
    if any(deg[v] > 3 for v in branch) or len(branch) > 1:
        return None

    if not high:
        if not branch:
            # path with all labels 3
            order = math.factorial(n + 1)
            return order, n * (n + 1) // 2
        legs = _leg_lengths(n, edges, branch[0])
        if legs is None:
            return None
        legs.sort()
        if legs[0] == 1 and legs[1] == 1:
            return (1 << (n - 1)) * math.factorial(n), n * (n - 1)
        if legs == [1, 2, 2] and n == 6:
            return _E_ORDERS[6]
        if legs == [1, 2, 3] and n == 7:
            return _E_ORDERS[7]
        if legs == [1, 2, 4] and n == 8:
            return _E_ORDERS[8]
        return None

    if branch or len(high) > 1:
        return None
    mark = high[0]
    ends = [v for v in range(n) if deg[v] == 1]
    marked = next((a, b) for a, b, m in edges if m > 3)
    at_end = marked[0] in ends or marked[1] in ends
    if mark == 4:
        if at_end:
            return (1 << n) * math.factorial(n), n * n
        if n == 4 and marked[0] not in ends and marked[1] not in ends:
            return 1152, 24
        return None
    if mark == 5 and at_end:
        if n == 3:
            return 120, 15
        if n == 4:
            return 14400, 60
    return None


def _leg_lengths(n, edges, center):
    """Lengths of the three paths hanging off the unique degree-3 vertex;
    None when the tree is not a star of three paths."""
    adj = {v: [] for v in range(n)}
    for a, b, _ in edges:
        adj[a].append(b)
        adj[b].append(a)
    legs = []
    for start in adj[center]:
        length = 1
        prev, cur = center, start
        while True:
            nxt = [v for v in adj[cur] if v != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return None
            prev, cur = cur, nxt[0]
            length += 1
        legs.append(length)
    return legs


def spherical_info(M: CoxeterMatrix, subset: Iterable[int]):
    """(order, longest_length) of W_T when T is spherical, else None."""
    remaining = set(subset)
    order = 1
    longest = 0
    while remaining:
        seed = remaining.pop()
        comp = [seed]
        stack = [seed]
        while stack:
            v = stack.pop()
            for u in list(remaining):
                if M.label(v, u) != 2:
                    remaining.remove(u)
                    comp.append(u)
                    stack.append(u)
        info = _classify_component(M, comp)
        if info is None:
            return None
        order *= info[0]
        longest += info[1]
    return order, longest


def is_spherical(M: CoxeterMatrix, subset: Iterable[int]) -> bool:
    return spherical_info(M, subset) is not None


def group_order(M: CoxeterMatrix, subset: Iterable[int]) -> int:
    info = spherical_info(M, subset)
    if info is None:
        raise ValueError("subset is not spherical")
    return info[0]


class SphericalPoset:
    """All spherical subsets of a system, ordered by inclusion.

    Contains the empty set, is closed downward, and records for each subset
    the exact group order and the length of the longest element.
    """

    def __init__(self, M: CoxeterMatrix, cap: int = SPHERICAL_CAP):
        self.system = M
        info = {frozenset(): (1, 0)}
        frontier = [frozenset()]
        while frontier:
            new = []
            for T in frontier:
                for s in range(M.rank):
                    if s in T:
                        continue
                    T2 = T | {s}
                    if T2 in info:
                        continue
                    data = spherical_info(M, T2)
                    if data is not None:
                        info[T2] = data
                        new.append(T2)
                        if len(info) > cap:
                            raise ExplosionGuard(
                                f"spherical poset exceeds cap {cap}"
                            )
            frontier = new
        self._info = info
        self._sorted = sorted(info, key=lambda T: (len(T), sorted(T)))

    def __contains__(self, T) -> bool:
        return frozenset(T) in self._info

    def __iter__(self):
        return iter(self._sorted)

    def __len__(self) -> int:
        return len(self._info)

    def order(self, T) -> int:
        return self._info[frozenset(T)][0]

    def longest_length(self, T) -> int:
        return self._info[frozenset(T)][1]

    def of_rank(self, k: int) -> list[frozenset]:
        return [T for T in self._sorted if len(T) == k]

    def rank_counts(self) -> list[int]:
        top = max((len(T) for T in self._sorted), default=0)
        counts = [0] * (top + 1)
        for T in self._sorted:
            counts[len(T)] += 1
        return counts

    def at_least(self, T) -> list[frozenset]:
        T = frozenset(T)
        return [V for V in self._sorted if T <= V]

    def less_than(self, V) -> list[frozenset]:
        V = frozenset(V)
        return [T for T in self._sorted if T < V]

    def subsets_of(self, U) -> list[frozenset]:
        U = frozenset(U)
        return [T for T in self._sorted if T <= U]


def spherical_poset(M: CoxeterMatrix, cap: int = SPHERICAL_CAP) -> SphericalPoset:
    return SphericalPoset(M, cap)


def even_spherical_shortcut(M: CoxeterMatrix, subset: Iterable[int]) -> bool:
    """Sphericity test valid in even systems only: the non-commuting diagram
    on the subset must be a disjoint union of isolated vertices and single
    edges with finite labels."""
    if not M.is_even:
        raise NotEven("shortcut applies to even systems only")
    T = sorted(set(subset))
    deg = {v: 0 for v in T}
    for i, a in enumerate(T):
        for b in T[i + 1 :]:
            m = M.label(a, b)
            if m == 2:
                continue
            if m == INF:
                return False
            deg[a] += 1
            deg[b] += 1
            if deg[a] > 1 or deg[b] > 1:
                return False
    return True


def chi_orb(M: CoxeterMatrix, poset: SphericalPoset | None = None) -> Fraction:
    """Alternating sum of 1/|W_T| over all spherical subsets T."""
    if poset is None:
        poset = SphericalPoset(M)
    total = Fraction(0)
    for T in poset:
        total += Fraction((-1) ** len(T), poset.order(T))
    return total


@dataclass(frozen=True)
class GeneratorProjection:
    """The generator-killing map W_V -> W_T: fixes V & T, sends V - T to e.

    A homomorphism when (W_V, V) is even; refuse otherwise.
    """

    system: CoxeterMatrix
    source: frozenset
    target: frozenset

    def __post_init__(self):
        V = sorted(self.source)
        for i, a in enumerate(V):
            for b in V[i + 1 :]:
                m = self.system.label(a, b)
                if m != INF and m % 2 != 0:
                    raise NotEven(
                        "projection source subsystem must be even; "
                        f"label {self.system.generators[a]},"
                        f"{self.system.generators[b]} is {int(m)}"
                    )

    def letters(self, word) -> bytes:
        """Image word before reduction: letters outside the target deleted."""
        keep = self.source & self.target
        return bytes(c for c in word if c in keep)

    def apply(self, engine, word) -> bytes:
        """Image of an element of the source subgroup, in normal form."""
        word = engine.normal_form(word)
        if not set(word) <= self.source:
            raise ValueError("element is not supported in the source subset")
        return engine.normal_form(self.letters(word))
