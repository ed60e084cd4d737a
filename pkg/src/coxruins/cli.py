"""The coxeter command line: system checks, enumeration, nerves, ruins,
colorings, homology, Euler characteristics, and the verification suite."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import harness
from .cells import CellPoset, build_ruin, components, coset_components
from .coloring import paint
from .errors import CoxruinsError, InvalidMatrix, ParseError
from .homology import ChainComplex
from .nerve import build_nerve, is_flag, sphere_check
from .system import SphericalPoset, chi_orb, parse_system
from .words import WordEngine


def _load(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_system(fh.read())


def _gen_names(system, letters):
    return ",".join(system.generators[i] for i in letters)


def cmd_check_system(args) -> int:
    try:
        system = _load(args.file)
    except (ParseError, InvalidMatrix) as exc:
        print(f"invalid: {exc}")
        return 2
    poset = SphericalPoset(system)
    print(f"generators: {', '.join(system.generators)}")
    print(f"even: {'yes' if system.is_even else 'no'}")
    print(f"spherical subsets: {len(poset)}")
    counts = poset.rank_counts()
    print("by rank: " + ", ".join(
        f"{k}:{c}" for k, c in enumerate(counts)
    ))
    return 0


def cmd_enumerate(args) -> int:
    system = _load(args.file)
    engine = WordEngine(system)
    ball = engine.ball(args.radius)
    if args.csv:
        print("length,word")
        for layer in ball.layers:
            for w in layer:
                name = "" if not w else "*".join(
                    system.generators[c] for c in w
                )
                print(f"{len(w)},{name or 'e'}")
    else:
        for k, layer in enumerate(ball.layers):
            print(f"length {k}: {len(layer)}")
        print(f"total: {len(ball)}")
    return 0


def cmd_nerve(args) -> int:
    system = _load(args.file)
    L = build_nerve(system)
    print(f"f-vector: {L.f_vector()}")
    if args.flag:
        flag, clique = is_flag(L)
        if flag:
            print("flag: yes")
        else:
            print(f"flag: no, clique {sorted(clique)} spans no simplex")
    if args.check_sphere is not None:
        verdict = sphere_check(L, args.check_sphere)
        print(f"sphere S^{args.check_sphere}: {verdict.verdict} "
              f"({verdict.detail})")
    return 0


def _ruin_letters(args, system):
    if args.letters:
        return tuple(system.index(name) for name in args.letters.split(","))
    if args.letter:
        return (system.index(args.letter),)
    raise SystemExit("one of --letter or --letters is required")


def cmd_build_ruin(args) -> int:
    system = _load(args.file)
    engine = WordEngine(system)
    T = _ruin_letters(args, system)
    sigma = CellPoset(engine, range(system.rank), args.radius)
    ruin = build_ruin(sigma, T)
    by_type: dict[str, int] = {}
    for c in ruin.omega:
        key = _gen_names(system, c.typ) or "e"
        by_type[key] = by_type.get(key, 0) + 1
    u_star = frozenset().union(*(map(frozenset, [
        [s for s in range(system.rank)
         if system.label(s, t) != float("inf")] for t in T
    ])))
    omega_comps = components(sigma, ruin.omega, sorted(u_star))
    bd_comps = components(sigma, ruin.boundary,
                          sorted(u_star - set(T)))
    collar_count = None
    if len(T) == 1:
        vertices = [c.rep for c in ruin.omega if not c.typ]
        traces = coset_components(sigma, vertices,
                                  sorted(sigma.U - set(T)))
        collar_count = len(traces)
    report = {
        "system": system.digest(),
        "radius": args.radius,
        "letters": [system.generators[t] for t in T],
        "cells_by_type": dict(sorted(by_type.items())),
        "omega_cells": len(ruin.omega),
        "boundary_cells": len(ruin.boundary),
        "omega_components": len(omega_comps),
        "boundary_components": len(bd_comps),
        "collars": collar_count,
    }
    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return 0


def cmd_color(args) -> int:
    system = _load(args.file)
    engine = WordEngine(system)
    t = system.index(args.letter)
    U = frozenset(
        s for s in range(system.rank)
        if system.label(s, t) != float("inf")
    )
    sigma = CellPoset(engine, U, args.radius, vertex_letters=U)
    ruin = build_ruin(sigma, (t,))
    painted = paint(ruin, t)
    colors = sorted({painted.component_color[k] for k in painted.components},
                    key=str)
    color_id = {c: i for i, c in enumerate(colors)}
    if args.dot:
        print("graph ruin {")
        for w in sorted(painted.color_of):
            name = "*".join(system.generators[c] for c in w) or "e"
            cid = color_id[painted.color_of[w]]
            parity = painted.palette.parity(w)
            shade = "gray" if parity == 0 else "white"
            print(f'  "{name}" [color_id={cid}, parity={parity}, '
                  f'style=filled, fillcolor={shade}];')
        seen = set()
        for (w, s), v in sigma.ball.table.items():
            if w in painted.color_of and v in painted.color_of:
                edge = tuple(sorted((w, v)))
                if edge not in seen and len(v) == len(w) + 1:
                    seen.add(edge)
                    a = "*".join(system.generators[c] for c in w) or "e"
                    b = "*".join(system.generators[c] for c in v) or "e"
                    print(f'  "{a}" -- "{b}";')
        print("}")
    else:
        evens = sum(
            1 for k in painted.components if painted.component_parity[k] == 0
        )
        odds = len(painted.components) - evens
        print(f"vertices: {len(painted.color_of)}")
        print(f"colors: {len(colors)}")
        print(f"boundary components: {len(painted.components)} "
              f"({evens} even, {odds} odd)")
    return 0


def cmd_homology(args) -> int:
    system = _load(args.file)
    engine = WordEngine(system)
    if args.space == "nerve":
        L = build_nerve(system)
        table = ChainComplex(L.ordered_simplices()).betti_table()
    else:
        sigma = CellPoset(engine, range(system.rank), args.radius)
        if args.space == "sigma":
            pool, chains = sigma.order_complex()
            table = ChainComplex(chains).betti_table()
        else:
            T = _ruin_letters(args, system)
            ruin = build_ruin(sigma, T)
            pool, chains = sigma.order_complex(ruin.omega)
            index = {c: i for i, c in enumerate(pool)}
            bset = {index[c] for c in ruin.boundary}
            if args.space == "ruin":
                table = ChainComplex(chains).betti_table()
            else:  # pair
                table = ChainComplex(
                    chains, relative=lambda ch: all(i in bset for i in ch)
                ).betti_table()
    for d, b in enumerate(table.betti):
        print(f"b_{d} = {b}")
    print(f"euler = {table.euler}")
    return 0


def cmd_euler(args) -> int:
    system = _load(args.file)
    poset = SphericalPoset(system)
    value = chi_orb(system, poset)
    print(f"chi_orb = {value}")
    L = build_nerve(system, poset)
    d = L.dimension
    verdict = sphere_check(L, d)
    if verdict.verdict == "pass" and (d + 1) % 2 == 0:
        k = (d + 1) // 2
        signed = (Fraction(-1) ** k) * value
        ok = "yes" if signed >= 0 else "NO"
        print(f"nerve certified as S^{d}; (-1)^{k} * chi_orb = {signed} "
              f">= 0: {ok}")
    return 0


def cmd_verify(args) -> int:
    system = _load(args.file)
    only = args.only.split(",") if args.only else None
    reports = harness.verify_suite(system, args.radius, only=only)
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        for r in reports:
            line = f"{r.check_id:24s} {r.verdict:8s} {r.seconds:8.3f}s"
            if r.detail:
                line += f"  {r.detail}"
            print(line)
    return 1 if any(r.verdict == "fail" for r in reports) else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxeter",
        description="Coxeter systems, ruins, colorings, homology, and the "
                    "verification suite",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-system", help="validate a system file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_check_system)

    p = sub.add_parser("enumerate", help="enumerate the ball of a radius")
    p.add_argument("file")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--csv", action="store_true",
                   help="emit one CSV row per element with its normal form")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("nerve", help="f-vector, flagness, sphere certificate")
    p.add_argument("file")
    p.add_argument("--flag", action="store_true")
    p.add_argument("--check-sphere", type=int, default=None, metavar="DIM")
    p.set_defaults(fn=cmd_nerve)

    p = sub.add_parser("build-ruin", help="build a ruin and report its cells")
    p.add_argument("file")
    p.add_argument("--letter")
    p.add_argument("--letters")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_build_ruin)

    p = sub.add_parser("color", help="paint a one-letter ruin")
    p.add_argument("file")
    p.add_argument("--letter", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--dot", action="store_true",
                   help="emit a DOT graph of colored chambers")
    p.set_defaults(fn=cmd_color)

    p = sub.add_parser("homology", help="Betti numbers of a finite piece")
    p.add_argument("file")
    p.add_argument("--space", choices=("sigma", "ruin", "nerve", "pair"),
                   required=True)
    p.add_argument("--letter")
    p.add_argument("--letters")
    p.add_argument("--radius", type=int, default=4)
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser("euler", help="orbihedral Euler characteristic")
    p.add_argument("file")
    p.set_defaults(fn=cmd_euler)

    p = sub.add_parser("verify-lemmas", help="run the verification suite")
    p.add_argument("file")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--only", help="comma-separated check ids")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CoxruinsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
