"""Exhaustive desk-scale verification of the combinatorial statements.

Every check quantifies over the enumerated ball (or the provably complete
safe interior of it) and reports pass, fail with a replayable witness, or
skipped with the reason.  Hypothesis violations skip rather than fail; a
resource guard also skips.  Reports carry the radius and the per-check
bounds so a pass is always a statement about an explicit finite region.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterable

from . import coloring
from .cells import Cell, CellPoset, build_ruin
from .errors import ExplosionGuard, TruncationUnsafe
from .homology import ChainComplex
from .nerve import build_nerve, is_flag, link, sphere_check
from .system import INF, CoxeterMatrix, SphericalPoset
from .words import Word, WordEngine

#: resource caps for a single check
MAX_CLASS_TOTAL = 3_000_000
MAX_PAIRS = 150_000
MAX_COLLAR_PAIRS = 600
MAX_HOMOLOGY_CHAINS = 200_000
MAX_RUIN_INSTANCES = 3
DEFAULT_BALL_CAP = 250_000


@dataclass
class VerificationReport:
    check_id: str
    system: str
    parameters: dict
    verdict: str                    # "pass" | "fail" | "skipped"
    witness: dict | None
    seconds: float
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "check_id": self.check_id,
            "system": self.system,
            "parameters": self.parameters,
            "verdict": self.verdict,
            "witness": self.witness,
            "seconds": round(self.seconds, 6),
            "detail": self.detail,
        }


class Skip(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class Fail(Exception):
    def __init__(self, witness: dict):
        super().__init__(witness.get("reason", "check failed"))
        self.witness = witness


class CheckContext:
    """Shared, lazily built data for one (system, radius) verification run."""

    def __init__(self, system: CoxeterMatrix, radius: int,
                 ball_cap: int = DEFAULT_BALL_CAP):
        self.system = system
        self.radius = radius
        self.ball_cap = ball_cap
        self.engine = WordEngine(system, ball_cap=ball_cap)
        self.poset = SphericalPoset(system)
        self.nerve = build_nerve(system, self.poset)
        self.flag, self.flag_clique = is_flag(self.nerve)
        self._ball = None
        self._painted: dict[int, coloring.PaintedRuin] = {}
        self._sphere = None

    def ball(self):
        if self._ball is None:
            self._ball = self.engine.ball(self.radius)
        return self._ball

    def require_even(self):
        if not self.system.is_even:
            raise Skip("system is not even")

    def require_flag(self):
        if not self.flag:
            raise Skip(
                f"nerve is not flag (clique {sorted(self.flag_clique)})"
            )

    def star(self, t: int) -> frozenset:
        return frozenset(
            s for s in range(self.system.rank)
            if self.system.label(s, t) != INF
        )

    def branching(self, t: int) -> list[int]:
        """Generators in the star of t whose label with t exceeds 2."""
        return [
            s for s in sorted(self.star(t))
            if s != t and self.system.label(s, t) > 2
        ]

    def painted(self, t: int) -> coloring.PaintedRuin:
        got = self._painted.get(t)
        if got is None:
            try:
                U = self.star(t)
                sigma = CellPoset(
                    self.engine, U, self.radius,
                    vertex_letters=U, poset=self.poset, ball_cap=self.ball_cap,
                )
                ruin = build_ruin(sigma, (t,))
                got = coloring.paint(ruin, t)
                if got.safe_bound < 1:
                    raise TruncationUnsafe(
                        f"safe interior empty at radius {self.radius} for "
                        f"letter {self.system.generators[t]}"
                    )
            except (TruncationUnsafe, ExplosionGuard) as exc:
                got = exc
            self._painted[t] = got
        if isinstance(got, Exception):
            raise got
        return got

    def sphere_dim(self):
        """(n-1, verdict) for the nerve against the sphere of its dimension."""
        if self._sphere is None:
            d = self.nerve.dimension
            self._sphere = (d, sphere_check(self.nerve, d))
        return self._sphere

    def gen(self, i: int) -> str:
        return self.system.generators[i]

    def word_json(self, w: Word) -> list[str]:
        return [self.gen(c) for c in w]


# ---------------------------------------------------------------------------
# word-level checks
# ---------------------------------------------------------------------------


def check_all_left(ctx: CheckContext, params: dict):
    """For every reduced factorization w*t*v with t absent from w and a
    letter r of w, absent from v, that does not commute with t: every
    reduced expression keeps all r's left of all t's."""
    engine = ctx.engine
    label = ctx.system.label
    total = 0
    triples: set[tuple[Word, int, int]] = set()
    for x in ctx.ball():
        if len(x) < 2:
            continue
        cls = engine.reduced_expressions(x)
        total += len(cls)
        if total > MAX_CLASS_TOTAL:
            raise Skip(f"class total exceeds {MAX_CLASS_TOTAL}")
        for e in cls:
            seen_t: set[int] = set()
            prefix: set[int] = set()
            for i, t in enumerate(e):
                if t not in prefix:
                    suffix = set(e[i + 1:])
                    for r in prefix - suffix:
                        if label(r, t) != 2:
                            triples.add((x, r, t))
                prefix.add(t)
            del seen_t
    checked = 0
    for x, r, t in sorted(triples):
        checked += 1
        for e in engine.reduced_expressions(x):
            if r in e and t in e and e.rfind(r) > e.index(t):
                raise Fail({
                    "reason": "letter r appears right of t in a reduced "
                              "expression",
                    "element": ctx.word_json(x),
                    "expression": ctx.word_json(e),
                    "r": ctx.gen(r), "t": ctx.gen(t),
                })
    params["factorization_triples"] = checked
    return f"{checked} (element, r, t) triples over {len(ctx.ball())} elements"


def check_support_reduction(ctx: CheckContext, params: dict):
    """Factorizations t*s*t*w' = w*t*v (all reduced, t absent from w, v
    supported in the common commuting neighbors plus s and t) force the
    support of w into those neighbors plus s."""
    ctx.require_even()
    engine = ctx.engine
    system = ctx.system
    pairs = [
        (t, s)
        for t in range(system.rank)
        for s in range(system.rank)
        if s != t and 2 < system.label(s, t) != INF
    ]
    if not pairs:
        params["pairs"] = 0
        return "no labels above 2; vacuous"
    neighborhoods = {
        (t, s): set(coloring_u_st(system, s, t)) for t, s in pairs
    }
    total = 0
    checked = 0
    for x in ctx.ball():
        if len(x) < 3:
            continue
        cls = engine.reduced_expressions(x)
        total += len(cls)
        if total > MAX_CLASS_TOTAL:
            raise Skip(f"class total exceeds {MAX_CLASS_TOTAL}")
        prefixes = {e[:3] for e in cls}
        live = [
            (t, s) for t, s in pairs if bytes((t, s, t)) in prefixes
        ]
        if not live:
            continue
        for e in cls:
            for i, letter in enumerate(e):
                for t, s in live:
                    if letter != t or t in e[:i]:
                        continue
                    ust = neighborhoods[(t, s)]
                    w_sup = set(e[:i])
                    v_sup = set(e[i + 1:])
                    if v_sup <= ust | {s, t} and not w_sup <= ust | {s}:
                        raise Fail({
                            "reason": "left factor support leaves the "
                                      "commuting neighborhood",
                            "element": ctx.word_json(x),
                            "expression": ctx.word_json(e),
                            "split": i,
                            "s": ctx.gen(s), "t": ctx.gen(t),
                        })
                    checked += 1
    params["pairs"] = len(pairs)
    params["splits"] = checked
    return f"{checked} splits over {len(pairs)} (t, s) pairs"


def coloring_u_st(system: CoxeterMatrix, s: int, t: int) -> tuple[int, ...]:
    return tuple(
        r for r in range(system.rank)
        if r not in (s, t) and system.label(r, t) == 2
        and system.label(r, s) == 2
    )


def check_branching_infinite(ctx: CheckContext, params: dict):
    """Two distinct branching generators for the same letter never have a
    finite label between them."""
    ctx.require_even()
    ctx.require_flag()
    system = ctx.system
    count = 0
    for t in range(system.rank):
        sp = ctx.branching(t)
        for i, s in enumerate(sp):
            for s2 in sp[i + 1:]:
                count += 1
                if system.label(s, s2) != INF:
                    raise Fail({
                        "reason": "branching generators with a finite label",
                        "t": ctx.gen(t), "s": ctx.gen(s), "s2": ctx.gen(s2),
                        "label": int(system.label(s, s2)),
                    })
    params["pairs"] = count
    return f"{count} branching pairs checked"


def check_commuting_extension(ctx: CheckContext, params: dict):
    """Inside any spherical set containing a branching pair {s, t}, every
    other member commutes with both s and t."""
    ctx.require_even()
    ctx.require_flag()
    system = ctx.system
    count = 0
    for t in range(system.rank):
        for s in ctx.branching(t):
            for T in ctx.poset.at_least({s, t}):
                for u in sorted(T - {s, t}):
                    count += 1
                    if system.label(u, t) != 2 or system.label(u, s) != 2:
                        raise Fail({
                            "reason": "non-commuting member of a spherical "
                                      "set containing a branching pair",
                            "t": ctx.gen(t), "s": ctx.gen(s),
                            "u": ctx.gen(u),
                            "T": [ctx.gen(i) for i in sorted(T)],
                        })
    params["memberships"] = count
    return f"{count} memberships checked"


def check_alternating_reduced(ctx: CheckContext, params: dict):
    """Alternating words t s t ... s t (odd length, below the relation
    length) are reduced on both sides against every other star generator."""
    ctx.require_even()
    ctx.require_flag()
    engine = ctx.engine
    system = ctx.system
    count = 0
    for t in range(system.rank):
        rest = sorted(ctx.star(t) - {t})
        for s in ctx.branching(t):
            m = int(system.label(s, t))
            for k in range(3, m, 2):
                u = bytes((t if i % 2 == 0 else s) for i in range(k))
                count += 1
                if len(engine.normal_form(u)) != k:
                    raise Fail({
                        "reason": "alternating word is not reduced",
                        "u": ctx.word_json(u),
                    })
                if not engine.is_reduced_pair(u, rest, rest):
                    raise Fail({
                        "reason": "alternating word is not reduced against "
                                  "the rest of the star",
                        "u": ctx.word_json(u), "t": ctx.gen(t),
                    })
    params["words"] = count
    return f"{count} alternating words checked"


def check_projection_homomorphism(ctx: CheckContext, params: dict):
    """Deleting letters outside a subset T respects products in even
    subsystems: checked for the star of each letter against each spherical
    T containing the letter."""
    ctx.require_even()
    engine = ctx.engine
    r1 = (ctx.radius + 1) // 2
    r2 = ctx.radius - r1
    checked = 0
    for t in range(ctx.system.rank):
        U = ctx.star(t)
        targets = [T for T in ctx.poset.at_least({t}) if T <= U]
        if not targets:
            continue
        ball1 = ctx.engine.ball(r1, U)
        ball2 = ctx.engine.ball(r2, U) if r2 != r1 else ball1
        n_pairs = len(ball1) * len(ball2) * len(targets)
        if n_pairs > MAX_PAIRS:
            raise Skip(
                f"{n_pairs} (pair, target) combinations exceed {MAX_PAIRS}"
            )
        for T in targets:
            T_set = set(T)
            for u in ball1:
                gu = engine.normal_form(bytes(c for c in u if c in T_set))
                for v in ball2:
                    uv = engine.mult_word(u, v)
                    lhs = engine.normal_form(
                        bytes(c for c in uv if c in T_set)
                    )
                    gv = engine.normal_form(bytes(c for c in v if c in T_set))
                    rhs = engine.mult_word(gu, gv)
                    checked += 1
                    if lhs != rhs:
                        raise Fail({
                            "reason": "projection does not respect the "
                                      "product",
                            "t": ctx.gen(t),
                            "T": [ctx.gen(i) for i in sorted(T)],
                            "u": ctx.word_json(u), "v": ctx.word_json(v),
                            "g(uv)": ctx.word_json(lhs),
                            "g(u)g(v)": ctx.word_json(rhs),
                        })
    params["products"] = checked
    params["half_radii"] = [r1, r2]
    return f"{checked} products checked"


# ---------------------------------------------------------------------------
# collar checks
# ---------------------------------------------------------------------------


def _painted_letters(ctx: CheckContext) -> list[int]:
    """Letters whose painted ruin fits in the safe interior; skip when none."""
    ctx.require_even()
    ctx.require_flag()
    out = []
    reasons = []
    for t in range(ctx.system.rank):
        try:
            ctx.painted(t)
            out.append(t)
        except (TruncationUnsafe, ExplosionGuard) as exc:
            reasons.append(f"{ctx.gen(t)}: {exc}")
    if not out:
        raise Skip("; ".join(reasons) or "no letters to paint")
    return out


def check_monochromatic(ctx: CheckContext, params: dict):
    """Boundary components are monochromatic, colors have a well-defined
    parity, and a star without branching generators yields exactly one even
    and one odd color."""
    letters = _painted_letters(ctx)
    comps = 0
    degenerate = []
    for t in letters:
        p = ctx.painted(t)
        for key, verts in p.components.items():
            comps += 1
            colors = {p.color_of[w] for w in verts}
            if len(colors) != 1:
                raise Fail({
                    "reason": "boundary component is not monochromatic",
                    "t": ctx.gen(t), "component": ctx.word_json(key),
                    "colors": sorted(str(c) for c in colors),
                })
            parities = {p.palette.parity(w) for w in verts}
            if len(parities) != 1:
                raise Fail({
                    "reason": "parity not constant on a component",
                    "t": ctx.gen(t), "component": ctx.word_json(key),
                })
        by_color: dict = {}
        for key in p.components:
            by_color.setdefault(p.component_color[key], None)
        for c in by_color:
            pc = p.palette.color_parity(c)
            for key in p.components:
                if p.component_color[key] == c and p.component_parity[key] != pc:
                    raise Fail({
                        "reason": "color parity disagrees with vertex parity",
                        "t": ctx.gen(t), "component": ctx.word_json(key),
                    })
        if not ctx.branching(t):
            ncolors = len(set(p.component_color.values()))
            degenerate.append((ctx.gen(t), ncolors))
            if ncolors != 2:
                raise Fail({
                    "reason": "star without branching generators must give "
                              "exactly one even and one odd color",
                    "t": ctx.gen(t), "colors": ncolors,
                })
    params["components"] = comps
    detail = f"{comps} components monochromatic"
    if degenerate:
        detail += "; degenerate two-color letters: " + ", ".join(
            f"{g} ({n} colors)" for g, n in degenerate
        )
    return detail


def check_same_color_disjoint(ctx: CheckContext, params: dict):
    """Distinct boundary components of the same color have disjoint collars."""
    letters = _painted_letters(ctx)
    pairs = 0
    for t in letters:
        p = ctx.painted(t)
        by_color: dict = {}
        for key in p.components:
            by_color.setdefault(p.component_color[key], []).append(key)
        for color, keys in sorted(by_color.items()):
            usable = []
            for k in keys:
                try:
                    p.collar(k)
                    usable.append(k)
                except TruncationUnsafe:
                    continue
            for i, k1 in enumerate(usable):
                for k2 in usable[i + 1:]:
                    pairs += 1
                    if pairs > MAX_COLLAR_PAIRS:
                        raise Skip(f"collar pairs exceed {MAX_COLLAR_PAIRS}")
                    both = p.collar(k1).carrier & p.collar(k2).carrier
                    if both:
                        c = min(both)
                        raise Fail({
                            "reason": "same-color collars intersect",
                            "t": ctx.gen(t),
                            "components": [ctx.word_json(k1),
                                           ctx.word_json(k2)],
                            "cell": {"type": [ctx.gen(i) for i in c.typ],
                                     "rep": ctx.word_json(c.rep)},
                        })
    params["pairs"] = pairs
    return f"{pairs} same-color collar pairs disjoint"


def _even_pairs(ctx: CheckContext, p, limit: int):
    keys = []
    for k in p.component_keys(parity=0):
        try:
            p.collar(k)
            keys.append(k)
        except TruncationUnsafe:
            continue
    pairs = [
        (k1, k2)
        for i, k1 in enumerate(keys)
        for k2 in keys[i + 1:]
        if p.component_color[k1] != p.component_color[k2]
    ]
    if len(pairs) > limit:
        raise Skip(f"{len(pairs)} even collar pairs exceed {limit}")
    return pairs


def check_base_even_intersection(ctx: CheckContext, params: dict):
    """The collar of the identity component and the collar through each
    even transition element of a branching dihedral meet exactly in the
    orbit of the chamber overlap under the common commuting neighbors."""
    letters = _painted_letters(ctx)
    engine = ctx.engine
    count = 0
    skips = []
    for t in letters:
        if not ctx.branching(t):
            continue
        p = ctx.painted(t)
        rest = tuple(sorted(p.ruin.U - {t}))
        for s in ctx.branching(t):
            fg = engine.finite_group((s, t))
            us = [
                w for w in fg.elements
                if s in set(w) and t in set(w) and w.count(t) % 2 == 0
                and t in engine.right_descents(w)
            ]
            for x in fg.elements:
                if s in set(x) and t in set(x) and x.count(t) % 2 == 0 \
                        and t not in engine.right_descents(x):
                    us.append(engine.multiply(x, s))
            for u in sorted(set(us)):
                key2 = p.sigma.ball.min_rep(u, rest)
                try:
                    cert = coloring.even_pair_certificate(
                        p, b"", key2, base_pair=(b"", u))
                except TruncationUnsafe as exc:
                    skips.append(f"{ctx.gen(t)}/{ctx.gen(s)}: {exc}")
                    continue
                count += 1
                if not cert.ok:
                    raise Fail({
                        "reason": cert.witness.get("reason", "certificate"),
                        "t": ctx.gen(t), "s": ctx.gen(s),
                        "u": ctx.word_json(u),
                        "witness": cert.witness,
                    })
    if count == 0:
        raise Skip("; ".join(skips) or "no branching letters")
    params["transitions"] = count
    return f"{count} base transitions verified"


def check_even_pair_structure(ctx: CheckContext, params: dict):
    """Every nonempty intersection of differently colored even collars is
    the orbit pattern of a unique branching generator."""
    letters = _painted_letters(ctx)
    count = 0
    unsafe = 0
    for t in letters:
        p = ctx.painted(t)
        for k1, k2 in _even_pairs(ctx, p, MAX_COLLAR_PAIRS):
            try:
                cells, cert = coloring.collar_intersection(p, k1, k2)
            except TruncationUnsafe:
                unsafe += 1
                continue
            if not cells:
                continue
            count += 1
            if cert is None or not cert.ok:
                witness = cert.witness if cert else {"reason": "no certificate"}
                raise Fail({
                    "reason": witness.get("reason", "even pair"),
                    "t": ctx.gen(t),
                    "components": [ctx.word_json(k1), ctx.word_json(k2)],
                    "witness": witness,
                })
    params["nonempty_pairs"] = count
    params["unverifiable_pairs"] = unsafe
    return f"{count} nonempty even pairs match the orbit pattern " \
           f"({unsafe} beyond the safe region)"


def check_even_iso(ctx: CheckContext, params: dict):
    """The certified even-pair intersections are cell-poset isomorphic to a
    fresh truncation of the Davis complex of the commuting-neighbor
    subsystem, and the edge link is that subsystem's nerve."""
    letters = _painted_letters(ctx)
    count = 0
    infinite = 0
    skips = []
    for t in letters:
        if not ctx.branching(t):
            continue
        p = ctx.painted(t)
        for s in ctx.branching(t):
            ust = coloring_u_st(ctx.system, s, t)
            L_st = link(ctx.nerve, (s, t))
            fresh_nerve = build_nerve(ctx.system, ctx.poset, restrict=ust)
            if set(L_st.simplices) != set(fresh_nerve.simplices):
                raise Fail({
                    "reason": "edge link differs from the commuting-neighbor "
                              "nerve",
                    "t": ctx.gen(t), "s": ctx.gen(s),
                })
            u = bytes((t, s, t))
            rest = tuple(sorted(p.ruin.U - {t}))
            key2 = p.sigma.ball.min_rep(ctx.engine.normal_form(u), rest)
            try:
                cert = coloring.even_pair_certificate(
                    p, b"", key2,
                    base_pair=(b"", ctx.engine.normal_form(u)))
            except TruncationUnsafe as exc:
                skips.append(f"{ctx.gen(t)}/{ctx.gen(s)}: {exc}")
                continue
            if not cert.ok:
                raise Fail({"reason": "certificate failed",
                            "witness": cert.witness})
            ok, detail = coloring.check_iso_onto_fresh(p, cert)
            count += 1
            if not ok:
                raise Fail({
                    "reason": detail, "t": ctx.gen(t), "s": ctx.gen(s),
                })
            if cert.w_prime_infinite:
                infinite += 1
    if count == 0:
        raise Skip("; ".join(skips) or "no branching letters")
    params["isomorphisms"] = count
    params["infinite_subsystems"] = infinite
    return f"{count} isomorphisms machine-checked ({infinite} infinite)"


def check_multi_even_stability(ctx: CheckContext, params: dict):
    """If two even-pair intersections with a common first collar share a
    cell, they coincide on the common safe region."""
    letters = _painted_letters(ctx)
    triples = 0
    for t in letters:
        p = ctx.painted(t)
        keys = []
        for k in p.component_keys(parity=0):
            try:
                p.collar(k)
                keys.append(k)
            except TruncationUnsafe:
                continue
        carriers = {k: p.collar(k).carrier for k in keys}
        for e in keys:
            for i, ki in enumerate(keys):
                if ki == e:
                    continue
                for kk in keys[i + 1:]:
                    if kk == e:
                        continue
                    inter_i = carriers[e] & carriers[ki]
                    inter_k = carriers[e] & carriers[kk]
                    shared = inter_i & inter_k
                    if not shared:
                        continue
                    triples += 1
                    if triples > MAX_COLLAR_PAIRS:
                        raise Skip(
                            f"stability triples exceed {MAX_COLLAR_PAIRS}"
                        )
                    sigma0 = min(shared)
                    w1 = min(p.collar(e).sources[sigma0])
                    w2i = min(p.collar(ki).sources[sigma0])
                    w2k = min(p.collar(kk).sources[sigma0])
                    try:
                        ci = coloring.even_pair_certificate(
                            p, e, ki, base_pair=(w1, w2i))
                        ck = coloring.even_pair_certificate(
                            p, e, kk, base_pair=(w1, w2k))
                    except TruncationUnsafe:
                        continue
                    if not (ci.ok and ck.ok):
                        bad = ci if not ci.ok else ck
                        raise Fail({"reason": "certificate failed",
                                    "witness": bad.witness})
                    zb = min(ci.zbound, ck.zbound)
                    seti = {c for c in ci.mapping
                            if len(ci.mapping[c].rep) <= zb}
                    setk = {c for c in ck.mapping
                            if len(ck.mapping[c].rep) <= zb}
                    if seti != setk:
                        raise Fail({
                            "reason": "stability violated on the common "
                                      "region",
                            "t": ctx.gen(t),
                            "components": [ctx.word_json(e),
                                           ctx.word_json(ki),
                                           ctx.word_json(kk)],
                        })
    params["triples"] = triples
    return f"{triples} overlapping stability triples checked"


def check_odd_collar(ctx: CheckContext, params: dict):
    """Each odd collar meets the union of the even collars (and of any other
    odd collars) exactly in its inner boundary."""
    letters = _painted_letters(ctx)
    count = 0
    for t in letters:
        p = ctx.painted(t)
        odd = p.component_keys(parity=1)
        for key in odd:
            try:
                res = coloring.odd_vs_evens(p, key)
            except TruncationUnsafe:
                continue
            count += 1
            if not res.ok:
                raise Fail({
                    "reason": "odd collar intersection is not its inner "
                              "boundary",
                    "t": ctx.gen(t), "component": ctx.word_json(key),
                    "witness": res.witness,
                })
            others = [k for k in odd if k != key]
            try:
                res2 = coloring.odd_vs_evens(p, key, extra_odd_keys=others)
            except TruncationUnsafe:
                continue
            if not res2.ok:
                raise Fail({
                    "reason": "odd collar vs evens plus odds is not its "
                              "inner boundary",
                    "t": ctx.gen(t), "component": ctx.word_json(key),
                    "witness": res2.witness,
                })
    if count == 0:
        raise Skip("no odd collar fits the safe interior")
    params["odd_collars"] = count
    return f"{count} odd collars checked"


def check_component_correspondence(ctx: CheckContext, params: dict):
    """Cells of each boundary component correspond 1-1 (type and inclusion
    preserved) with a fresh truncation of the boundary subsystem's complex."""
    letters = _painted_letters(ctx)
    count = 0
    for t in letters:
        p = ctx.painted(t)
        for key in p.component_keys():
            if len(key) > p.safe_bound:
                continue
            if count >= MAX_COLLAR_PAIRS:
                raise Skip(f"components exceed {MAX_COLLAR_PAIRS}")
            try:
                res = coloring.boundary_component_correspondence(p, key)
            except TruncationUnsafe:
                continue
            count += 1
            if not res.ok:
                raise Fail({
                    "reason": res.detail,
                    "t": ctx.gen(t), "component": ctx.word_json(key),
                })
    if count == 0:
        raise Skip("no component fits the safe interior")
    params["components"] = count
    return f"{count} boundary components matched"


# ---------------------------------------------------------------------------
# two-letter ruin checks
# ---------------------------------------------------------------------------


def check_top_adjacency(ctx: CheckContext, params: dict):
    """Top-rank spherical sets sharing a codimension-one face differ in two
    generators with no relation between them (flag nerves only)."""
    ctx.require_flag()
    n = ctx.nerve.dimension + 1
    tops = ctx.poset.of_rank(n)
    count = 0
    for i, T1 in enumerate(tops):
        for T2 in tops[i + 1:]:
            R = T1 & T2
            if len(R) != n - 1:
                continue
            count += 1
            (r,) = tuple(T1 - R)
            (s,) = tuple(T2 - R)
            if ctx.system.label(r, s) != INF:
                raise Fail({
                    "reason": "adjacent top types with a finite label",
                    "T1": [ctx.gen(v) for v in sorted(T1)],
                    "T2": [ctx.gen(v) for v in sorted(T2)],
                    "label": int(ctx.system.label(r, s)),
                })
    params["adjacent_top_pairs"] = count
    return f"{count} adjacent top-type pairs all infinite"


def check_top_relative_homology(ctx: CheckContext, params: dict):
    """Top relative homology of two-letter ruins vanishes: checked on full
    complexes of top-rank spherical subsets, and on the truncated ambient
    complex when it is small enough."""
    ctx.require_flag()
    n = ctx.nerve.dimension + 1
    if n < 3:
        raise Skip(f"ambient dimension {n} below 3")
    d, verdict = ctx.sphere_dim()
    if verdict.verdict != "pass":
        raise Skip(f"nerve is not certified as a {d}-sphere: {verdict.detail}")
    instances = []
    for V in ctx.poset.of_rank(n):
        for T in ctx.poset.of_rank(2):
            if T <= V:
                instances.append((V, T))
    instances = instances[:MAX_RUIN_INSTANCES]
    if not instances:
        raise Skip("no two-letter ruin instances of full rank")
    checked = []
    for V, T in instances:
        sub = CellPoset(
            ctx.engine, V, ctx.poset.longest_length(V),
            vertex_letters=V, poset=ctx.poset, ball_cap=ctx.ball_cap,
        )
        ruin = build_ruin(sub, T)
        table = _relative_betti(sub, ruin.omega, ruin.boundary)
        if table[n] != 0:
            raise Fail({
                "reason": "top relative homology of a two-letter ruin is "
                          "nonzero",
                "V": [ctx.gen(v) for v in sorted(V)],
                "T": [ctx.gen(v) for v in sorted(T)],
                "betti": list(table.betti),
            })
        checked.append((sorted(V), sorted(T)))
    params["instances"] = [
        {"V": [ctx.gen(v) for v in V], "T": [ctx.gen(v) for v in T]}
        for V, T in checked
    ]
    return f"{len(checked)} full-rank two-letter ruins have vanishing top " \
           "relative homology"


def _relative_betti(sigma: CellPoset, omega, boundary):
    pool, chains = sigma.order_complex(omega)
    index = {c: i for i, c in enumerate(pool)}
    bset = {index[c] for c in boundary}
    if len(chains) > MAX_HOMOLOGY_CHAINS:
        raise Skip(f"{len(chains)} chains exceed {MAX_HOMOLOGY_CHAINS}")
    cc = ChainComplex(chains, relative=lambda ch: all(i in bset for i in ch))
    return cc.betti_table()


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    check_id: str
    description: str
    run: Callable[[CheckContext, dict], str]


REGISTRY: tuple[Check, ...] = (
    Check("L4.1", "non-commuting letters stay left of the pivot letter in "
                  "every reduced expression", check_all_left),
    Check("L4.2", "support of the left factor of a t*s*t-prefixed "
                  "factorization stays in the commuting neighborhood",
          check_support_reduction),
    Check("L5.1", "branching generators for one letter have no finite label "
                  "between them", check_branching_infinite),
    Check("L5.2", "spherical sets containing a branching pair commute with "
                  "it elsewhere", check_commuting_extension),
    Check("L5.3", "odd alternating words are reduced against the rest of "
                  "the star", check_alternating_reduced),
    Check("L5.4", "letter-deleting projections respect products",
          check_projection_homomorphism),
    Check("L5.7", "same-color boundary collars are disjoint",
          check_same_color_disjoint),
    Check("L5.8", "base even collar pairs meet in the commuting-subgroup "
                  "orbit of the chamber overlap", check_base_even_intersection),
    Check("P5.9-iso", "even collar intersections are isomorphic to the "
                      "commuting subsystem's complex", check_even_iso),
    Check("C5.10", "every even collar pair intersection carries the orbit "
                   "pattern", check_even_pair_structure),
    Check("C5.11-stability", "overlapping even intersections coincide",
          check_multi_even_stability),
    Check("odd-collar", "odd collars meet the even union in their inner "
                        "boundary", check_odd_collar),
    Check("C-odd", "boundary components correspond to the boundary "
                   "subsystem's complex", check_component_correspondence),
    Check("paint", "boundary components are monochromatic with well-defined "
                   "parity", check_monochromatic),
    Check("P-2ruintop-adjacency", "adjacent top types have no relation",
          check_top_adjacency),
    Check("P-2ruintop-homology", "top relative homology of two-letter ruins "
                                 "vanishes", check_top_relative_homology),
)

CHECK_IDS = tuple(c.check_id for c in REGISTRY)


def verify_lemma(system: CoxeterMatrix, check_id: str, radius: int, *,
                 ctx: CheckContext | None = None,
                 ball_cap: int = DEFAULT_BALL_CAP) -> VerificationReport:
    check = next((c for c in REGISTRY if c.check_id == check_id), None)
    if check is None:
        raise ValueError(f"unknown check id {check_id!r}; "
                         f"known: {', '.join(CHECK_IDS)}")
    ctx = ctx or CheckContext(system, radius, ball_cap)
    params: dict = {"radius": radius}
    start = time.perf_counter()
    try:
        detail = check.run(ctx, params)
        verdict, witness = "pass", None
    except Skip as exc:
        verdict, witness, detail = "skipped", None, exc.reason
    except Fail as exc:
        verdict, witness, detail = "fail", exc.witness, \
            exc.witness.get("reason", "")
    except (TruncationUnsafe, ExplosionGuard) as exc:
        verdict, witness, detail = "skipped", None, str(exc)
    return VerificationReport(
        check_id=check_id,
        system=system.digest(),
        parameters=params,
        verdict=verdict,
        witness=witness,
        seconds=time.perf_counter() - start,
        detail=detail,
    )


def verify_suite(system: CoxeterMatrix, radius: int, *,
                 only: Iterable[str] | None = None,
                 ball_cap: int = DEFAULT_BALL_CAP) -> list[VerificationReport]:
    wanted = list(only) if only else list(CHECK_IDS)
    unknown = [w for w in wanted if w not in CHECK_IDS]
    if unknown:
        raise ValueError(f"unknown check ids: {', '.join(unknown)}")
    ctx = CheckContext(system, radius, ball_cap)
    return [
        verify_lemma(system, check_id, radius, ctx=ctx, ball_cap=ball_cap)
        for check_id in CHECK_IDS
        if check_id in wanted
    ]
