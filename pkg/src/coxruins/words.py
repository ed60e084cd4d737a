"""Exact word arithmetic: normal forms, balls, descents, coset representatives.

Group elements are bytes of generator indices holding the shortlex-least
reduced expression (length first, then lexicographic by generator input
order).  All operations go through a WordEngine bound to one system; the
engineholds the kernel memo table and caches of finite standard subgroups.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import ExplosionGuard, NotEven
from .kernel import BACKEND, WordKernel
from .system import CoxeterMatrix, SphericalPoset

Word = bytes

IDENTITY: Word = b""


def as_word(letters: Sequence[int] | Word) -> Word:
    if isinstance(letters, (bytes, bytearray)):
        return bytes(letters)
    return bytes(letters)


class WordEngine:
    """Word operations for one Coxeter system."""

    def __init__(self, system: CoxeterMatrix, *, word_cap: int = 1_000_000,
                 ball_cap: int = 1_000_000):
        self.system = system
        self.ball_cap = ball_cap
        self._kernel = WordKernel(system.kernel_rows(), word_cap)
        self._finite: dict[frozenset, FiniteGroup] = {}

    @property
    def backend(self) -> str:
        return BACKEND

    def normal_form(self, letters: Sequence[int] | Word) -> Word:
        w = as_word(letters)
        if any(c >= self.system.rank for c in w):
            raise ValueError("letter out of range for this system")
        return self._kernel.normal_form(w)

    def length(self, letters: Sequence[int] | Word) -> int:
        return len(self.normal_form(letters))

    def support(self, w: Word) -> frozenset[int]:
        return frozenset(self.normal_form(w))

    def multiply(self, w: Word, s: int) -> Word:
        return self._kernel.normal_form(w + bytes((s,)))

    def mult_word(self, u: Word, v: Word) -> Word:
        return self._kernel.normal_form(u + v)

    def inverse(self, w: Word) -> Word:
        return self._kernel.normal_form(bytes(reversed(w)))

    def left_multiply(self, s: int, w: Word) -> Word:
        return self._kernel.normal_form(bytes((s,)) + w)

    def reduced_expressions(self, w: Word) -> list[Word]:
        return self._kernel.reduced_expressions(w)

    def right_descents(self, w: Word) -> set[int]:
        w = self.normal_form(w)
        return {s for s in range(self.system.rank)
                if len(self.multiply(w, s)) < len(w)}

    def left_descents(self, w: Word) -> set[int]:
        w = self.normal_form(w)
        return {s for s in range(self.system.rank)
                if len(self.left_multiply(s, w)) < len(w)}

    def is_reduced_pair(self, w: Word, X: Iterable[int], Y: Iterable[int]) -> bool:
        """True iff x*w and w*y are longer than w for every x in X, y in Y."""
        w = self.normal_form(w)
        k = len(w)
        return all(len(self.left_multiply(x, w)) > k for x in X) and all(
            len(self.multiply(w, y)) > k for y in Y
        )

    def coset_min_rep(self, w: Word, T: Iterable[int]) -> Word:
        """The unique shortest element of w*W_T."""
        w = self.normal_form(w)
        T = tuple(T)
        changed = True
        while changed:
            changed = False
            for s in T:
                ws = self.multiply(w, s)
                if len(ws) < len(w):
                    w = ws
                    changed = True
        return w

    def is_t_even(self, w: Word, s: int, t: int) -> bool:
        """True iff both s and t occur in w and w has an even t-count.

        Letter-count parity is only well-defined in even systems.
        """
        if not self.system.is_even:
            raise NotEven("t-even detection requires an even system")
        w = self.normal_form(w)
        sup = frozenset(w)
        return s in sup and t in sup and w.count(t) % 2 == 0

    def ball(self, radius: int, letters: Iterable[int] | None = None,
             cap: int | None = None) -> "Ball":
        return Ball(self, radius, letters, cap or self.ball_cap)

    def finite_group(self, T: Iterable[int]) -> "FiniteGroup":
        key = frozenset(T)
        fg = self._finite.get(key)
        if fg is None:
            fg = FiniteGroup(self, key)
            self._finite[key] = fg
        return fg


class Ball(object):
    """All elements of length <= radius, with the right-multiplication table.

    BFS over right multiplication with canonical-form deduplication.  When
    `letters` is given, enumeration is restricted to the standard subgroup
    they generate.  table[(w, s)] = normal form of w*s; for w of length
    below the radius every generator is recorded, on the outermost layer
    only length-decreasing products are.
    """

    def __init__(self, engine: WordEngine, radius: int,
                 letters: Iterable[int] | None, cap: int,
                 _closure: bool = False):
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        self.engine = engine
        self.radius = radius
        self.letters = tuple(sorted(
            range(engine.system.rank) if letters is None else set(letters)
        ))
        nf = engine._kernel.normal_form
        layers: list[list[Word]] = [[IDENTITY]]
        table: dict[tuple[Word, int], Word] = {}
        members = {IDENTITY}
        k = 0
        while k < radius or _closure:
            if k >= len(layers):
                break
            nxt = []
            for w in layers[k]:
                for s in self.letters:
                    if (w, s) in table:
                        continue
                    v = nf(w + bytes((s,)))
                    table[(w, s)] = v
                    table[(v, s)] = w
                    if v not in members:
                        members.add(v)
                        nxt.append(v)
            if len(members) > cap:
                raise ExplosionGuard(
                    f"ball of radius {radius} exceeds cap {cap}"
                )
            if nxt:
                layers.append(sorted(nxt))
            k += 1
        self.layers = layers
        self.table = table
        self.members = members

    def __contains__(self, w: Word) -> bool:
        return w in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        for layer in self.layers:
            yield from layer

    def layer_sizes(self) -> list[int]:
        return [len(layer) for layer in self.layers]

    def mult(self, w: Word, s: int) -> Word | None:
        """w*s, or None when the product falls outside the ball."""
        v = self.table.get((w, s))
        if v is None and len(w) < len(self.layers) - 1:
            raise KeyError("word is not a ball member")
        return v

    def min_rep(self, w: Word, T: Iterable[int]) -> Word:
        """Min-length coset representative of w*W_T, via recorded descents."""
        T = tuple(T)
        changed = True
        while changed:
            changed = False
            for s in T:
                v = self.table.get((w, s))
                if v is not None and len(v) < len(w):
                    w = v
                    changed = True
        return w

    def coset(self, w: Word, T: Iterable[int]) -> set[Word] | None:
        """Members of w*W_T inside the ball; None if the coset leaks out."""
        T = tuple(T)
        seed = self.min_rep(w, T)
        seen = {seed}
        stack = [seed]
        while stack:
            x = stack.pop()
            for s in T:
                y = self.table.get((x, s))
                if y is None:
                    return None
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen


class FiniteGroup:
    """A finite standard subgroup W_T enumerated to closure.

    Elements are indexed in BFS shortlex order; index 0 is the identity.
    """

    def __init__(self, engine: WordEngine, T: frozenset):
        ball = Ball(engine, 0, T, engine.ball_cap, _closure=True)
        self.letters = ball.letters
        self.elements: list[Word] = list(ball)
        self.index = {w: i for i, w in enumerate(self.elements)}
        self.longest = len(self.elements[-1])
        pos = {s: j for j, s in enumerate(self.letters)}
        self._pos = pos
        self._mult = [
            [self.index[ball.table[(w, s)]] for s in self.letters]
            for w in self.elements
        ]
        self._minrep_cache: dict[frozenset, list[int]] = {}

    def __len__(self) -> int:
        return len(self.elements)

    def mult(self, i: int, s: int) -> int:
        return self._mult[i][self._pos[s]]

    def fold(self, letters: Iterable[int], start: int = 0) -> int:
        """Index of start * (product of letters); letters outside T are skipped."""
        i = start
        keep = self._pos
        for c in letters:
            j = keep.get(c)
            if j is not None:
                i = self._mult[i][j]
        return i

    def min_rep_table(self, U: Iterable[int]) -> list[int]:
        """For each element index, the index of the shortest member of its
        left coset x*W_U."""
        key = frozenset(U)
        cached = self._minrep_cache.get(key)
        if cached is not None:
            return cached
        cols = [self._pos[s] for s in sorted(key)]
        out = []
        for i in range(len(self.elements)):
            x = i
            changed = True
            while changed:
                changed = False
                for j in cols:
                    y = self._mult[x][j]
                    if len(self.elements[y]) < len(self.elements[x]):
                        x = y
                        changed = True
            out.append(x)
        self._minrep_cache[key] = out
        return out


def enumerate_ball(system: CoxeterMatrix, radius: int,
                   engine: WordEngine | None = None,
                   cap: int | None = None) -> list[list[Word]]:
    """Length-graded list of all elements of length <= radius."""
    engine = engine or WordEngine(system)
    return engine.ball(radius, cap=cap).layers


def parity_vector(w: Word, rank: int) -> tuple[int, ...]:
    return tuple(w.count(s) % 2 for s in range(rank))


def poset_for(engine: WordEngine) -> SphericalPoset:
    return SphericalPoset(engine.system)
