"""Shared fixtures and the independent oracles the expected values come from.

The oracles deliberately avoid the package's word engine: the dihedral
oracle multiplies permutations of polygon vertices, and the right-angled
oracle rewrites words with a tiny confluent system (cancel squares, sort
commuting neighbors).  Expected counts asserted in the tests were computed
with these and then frozen.
"""

from itertools import product

import pytest

from coxruins.words import WordEngine
from coxruins import catalog


@pytest.fixture(scope="session")
def engines():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = WordEngine(catalog.NAMED[name]())
        return cache[name]

    return get


def dihedral_order_oracle(m: int) -> int:
    """Order of the group generated by two reflections of the regular
    2m-gon whose axes are one step apart, by permutation closure.  Faithful
    for every m >= 2, including the degenerate digon."""
    if m == 0:
        raise ValueError("infinite dihedral group")
    pts = list(range(2 * m))
    s = tuple((-i) % (2 * m) for i in pts)
    t = tuple((2 - i) % (2 * m) for i in pts)
    gens = (s, t)
    seen = {tuple(pts)}
    frontier = [tuple(pts)]
    while frontier:
        new = []
        for g in frontier:
            for h in gens:
                gh = tuple(g[h[i]] for i in pts)
                if gh not in seen:
                    seen.add(gh)
                    new.append(gh)
        frontier = new
    return len(seen)


def right_angled_normal_form(word, commutes):
    """Normal form for right-angled systems, done in two classical phases:
    cancel equal-letter pairs whose interior commutes with the letter until
    the trace is reduced, then repeatedly extract the smallest letter that
    can commute to the front.  The result is the lexicographically least
    reduced word of the trace."""
    w = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(w)):
            x = w[i]
            for j in range(i + 1, len(w)):
                if w[j] == x:
                    if all(commutes(w[k], x) for k in range(i + 1, j)):
                        del w[j]
                        del w[i]
                        changed = True
                    break
            if changed:
                break
    out = []
    while w:
        best = None
        for p, x in enumerate(w):
            if all(commutes(w[k], x) for k in range(p)):
                if best is None or x < best[1]:
                    best = (p, x)
        out.append(best[1])
        del w[best[0]]
    return tuple(out)


def right_angled_ball_counts(M, radius: int) -> list[int]:
    """Count elements per length by brute-force word deduplication."""
    n = M.rank

    def commutes(a, b):
        return M.label(a, b) == 2

    seen = set()
    for k in range(radius + 1):
        for word in product(range(n), repeat=k):
            seen.add(right_angled_normal_form(word, commutes))
    counts = [0] * (radius + 1)
    for w in seen:
        counts[len(w)] += 1
    return counts


def brute_force_group_order(M, subset, cap=100_000) -> int:
    """Order of the standard subgroup on `subset` via the word engine of the
    restricted system; independent of the classification table."""
    engine = WordEngine(M)
    # closure enumeration: widen the radius until the ball stops growing
    radius = 4
    while True:
        ball = engine.ball(radius, subset, cap=cap)
        bigger = engine.ball(radius + 1, subset, cap=cap)
        if len(bigger) == len(ball):
            return len(ball)
        radius += 2
