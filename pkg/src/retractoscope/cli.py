"""Command-line entry point.

Exit codes: 0 when the property holds or generation succeeds, 1 when it is
refuted, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import io
from .evolutions import (EvolutionError, is_ppr, is_sociable, ppr_witness, sentinel_chain_witness,
                         sociable_witness)
from .fraisse import (EVOLUTION_MAX_DEPTH, HAT, LIFT_MAX_VERTICES, PROJECTIVE_MAX_DEPTH, CONNECTED,
                      DepthError, LiftError, evolution_level, evolution_lift, projective_level,
                      projective_lift, shallow_chain)
from .graph import GraphError, diameter
from .morphisms import MorphismError, first_retraction, is_retraction_onto
from .towers import (TowerError, envelope_from_evolution, evolution_tower, isolated_density_step,
                     isolated_vertex_certificate, projective_tower, validate_system)
from .universal import (UniversalError, fibers_double, henson_seed, rado_envelope_levels,
                        rado_sentinel_chain)

HOLDS, REFUTED, USAGE = 0, 1, 2
DOT_DEPTH = 2


class UsageError(Exception):
    pass


def _emit(data) -> None:
    sys.stdout.write(io.dumps(data) + "\n")


def _graph(args):
    if not args.graph:
        raise UsageError("--graph is required")
    return io.graph_from_dict(io.load_json(args.graph))


def _morphism(args):
    if not args.morphism:
        raise UsageError("--morphism is required")
    return io.morphism_from_dict(io.load_json(args.morphism))


def _resolve(G, text: str) -> int:
    """Index of a vertex named on the command line; integer labels may be typed as digits."""
    if G.has_label(text):
        return G.index(text)
    try:
        as_int = int(text)
    except ValueError:
        as_int = None
    if as_int is not None and G.has_label(as_int):
        return G.index(as_int)
    raise UsageError(f"no vertex labeled {text!r}")


def _depth_guard(args, default: int) -> int:
    return args.max_depth if args.max_depth is not None else default


# -- commands ----------------------------------------------------------------------

def cmd_check(args) -> int:
    prop = args.property
    if prop in ("ppr", "sociable"):
        G = _graph(args)
        holds = is_ppr(G) if prop == "ppr" else is_sociable(G)
        _emit({prop: holds})
        return HOLDS if holds else REFUTED
    if prop == "retraction" and args.graph:
        G = _graph(args)
        if not args.onto:
            raise UsageError("--onto is required with --graph")
        S = [_resolve(G, lab) for lab in args.onto]
        r = first_retraction(G, S)
        _emit({"retraction": r is not None,
               "map": None if r is None else [[a, b] for a, b in r.label_map().items()]})
        return HOLDS if r is not None else REFUTED
    f = _morphism(args)
    c = f.classification
    if prop == "quotient":
        holds = c.quotient
    elif prop == "embedding":
        holds = c.embedding
    else:
        dom = f.dom
        image = [dom.index(f.cod.labels[w]) for w in f.images if dom.has_label(f.cod.labels[w])]
        holds = len(image) == len(f.images) and is_retraction_onto(dom, set(image), f)
    out = c.as_dict()
    out[prop] = holds
    _emit(out)
    return HOLDS if holds else REFUTED


def cmd_witness(args) -> int:
    G = _graph(args)
    e = ppr_witness(G) if args.kind == "ppr" else sociable_witness(G)
    if e is None:
        _emit({args.kind: False})
        return REFUTED
    _emit(io.witness_to_dict(e))
    return HOLDS


def cmd_gen(args) -> int:
    what = args.what
    if what == "projective-level":
        G = projective_level(args.n, _depth_guard(args, PROJECTIVE_MAX_DEPTH)).graph
        _emit({"vertices": len(G), "edges": G.edge_count} if args.stats else io.graph_to_dict(G))
        return HOLDS
    if what == "evolution-level":
        lvl = evolution_level(args.n, args.variant, _depth_guard(args, EVOLUTION_MAX_DEPTH))
        G = lvl.graph
        if args.stats:
            d = diameter(G)
            _emit({"vertices": len(G), "edges": G.edge_count,
                   "diameter": d if d != float("inf") else None})
        else:
            out = io.graph_to_dict(G)
            if lvl.bond is not None:
                out["bond"] = [[a, b] for a, b in lvl.bond.label_map().items()]
            _emit(out)
        return HOLDS
    if what == "rado-chain":
        chain = rado_sentinel_chain(list(range(args.n)))
        e = sentinel_chain_witness(chain)
        host = chain.host
        out = {"levels": [sorted(host.labels[v] for v in S) for S in chain.levels],
               "sentinels": [host.labels[v] for v in chain.sentinels],
               "witness": io.witness_to_dict(e)}
        if args.stats:
            out = {"levels": len(chain.levels), "vertices": len(host),
                   "sociable": e.is_sociable()}
        _emit(out)
        return HOLDS if e.is_sociable() else REFUTED
    if what == "rado-envelope":
        s = rado_envelope_levels(args.n, _depth_guard(args, 5))
        report = validate_system(s)
        if args.stats:
            _emit({"sizes": [len(G) for G in s.levels], "valid": report.valid,
                   "fibers_double": fibers_double(s)})
        else:
            _emit(io.tower_to_dict(s))
        return HOLDS if report.valid else REFUTED
    ctx = henson_seed(args.n)
    _emit(ctx.as_dict() | {"host": io.graph_to_dict(ctx.host)})
    return HOLDS


def cmd_lift(args) -> int:
    if args.kind == "projective":
        p = _morphism(args)
        lift = projective_lift(p.dom, p, args.max_vertices or LIFT_MAX_VERTICES)
        checks = lift.verify()
        _emit({"m": lift.m, "checks": checks})
        return HOLDS if checks["quotient"] and checks["commutes"] else REFUTED
    H = _graph(args)
    if not args.base:
        raise UsageError("--base LABEL=LEVEL_LABEL pairs are required")
    base = {}
    for pair in args.base:
        if "=" not in pair:
            raise UsageError(f"bad --base entry {pair!r}")
        a, b = pair.split("=", 1)
        base[H.labels[_resolve(H, a)]] = b
    depth = _depth_guard(args, EVOLUTION_MAX_DEPTH)
    chain = shallow_chain(H, base, args.level, depth)
    if chain is None:
        _emit({"lift": False, "reason": f"no one-point retraction chain onto the base within depth {depth}"})
        return REFUTED
    lift = evolution_lift(H, chain, args.level, base=base, max_depth=depth)
    ok = lift.verify(chain, base)
    _emit({"level": lift.level, "embedding": {str(k): v for k, v in lift.embedding.items()},
           "removals": len(lift.removals), "verified": ok})
    return HOLDS if ok else REFUTED


def cmd_envelope(args) -> int:
    G = _graph(args)
    e = ppr_witness(G)
    if e is None:
        _emit({"ppr": False})
        return REFUTED
    s = envelope_from_evolution(e)
    report = validate_system(s)
    _emit({"valid": report.valid, "problems": list(report.problems), "tower": io.tower_to_dict(s)})
    return HOLDS if report.valid else REFUTED


def cmd_isolated(args) -> int:
    depth = args.depth
    if args.tower == "projective":
        s = projective_tower(depth)
        label = args.vertex if args.vertex != "-" else ""
    else:
        s = evolution_tower(depth)
        label = args.vertex
    if not s.levels[args.level].has_label(label):
        raise UsageError(f"{label!r} is not a vertex of level {args.level}")
    ext, thread = isolated_density_step(s, args.level, label)
    cert = isolated_vertex_certificate(ext, thread)
    _emit({"thread": list(thread.entries), "anchor": thread.anchor} | cert.as_dict())
    return HOLDS if cert.holds else REFUTED


def cmd_export(args) -> int:
    if args.graph:
        G = _graph(args)
    elif args.projective is not None:
        guard = _depth_guard(args, DOT_DEPTH if args.format == "dot" else PROJECTIVE_MAX_DEPTH)
        G = projective_level(args.projective, guard).graph
    elif args.evolution is not None:
        guard = _depth_guard(args, DOT_DEPTH if args.format == "dot" else EVOLUTION_MAX_DEPTH)
        G = evolution_level(args.evolution, CONNECTED, guard).graph
    else:
        raise UsageError("one of --graph, --projective, --evolution is required")
    if args.format == "dot":
        sys.stdout.write(io.graph_to_dot(G))
    else:
        _emit(io.graph_to_dict(G))
    return HOLDS


def cmd_verify(args) -> int:
    from .suite import run_suite
    results = run_suite(seed=args.seed)
    for r in results:
        sys.stdout.write(r.line() + "\n")
    return HOLDS if all(r.passed for r in results) else REFUTED


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    env_depth = os.environ.get("RETRACTOSCOPE_MAX_DEPTH")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-depth", type=int,
                        default=int(env_depth) if env_depth and env_depth.isdigit() else None)
    common.add_argument("--max-vertices", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; work runs in one thread")

    parser = argparse.ArgumentParser(prog="retractoscope",
                                     description="Retractions, evolutions and towers of finite graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common])
    p.add_argument("property", choices=["ppr", "sociable", "quotient", "retraction", "embedding"])
    p.add_argument("--graph")
    p.add_argument("--morphism")
    p.add_argument("--onto", nargs="+")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("witness", parents=[common])
    p.add_argument("kind", choices=["ppr", "sociable"])
    p.add_argument("--graph")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("gen", parents=[common])
    p.add_argument("what", choices=["projective-level", "evolution-level", "rado-chain",
                                    "rado-envelope", "henson-seed"])
    p.add_argument("n", type=int)
    p.add_argument("--stats", action="store_true")
    p.add_argument("--variant", choices=[CONNECTED, HAT], default=CONNECTED)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("lift", parents=[common])
    p.add_argument("kind", choices=["projective", "evolution"])
    p.add_argument("--morphism")
    p.add_argument("--graph")
    p.add_argument("--base", nargs="+", help="pairs LABEL=LEVEL_LABEL identifying a copy of the level")
    p.add_argument("--level", type=int, default=1)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("envelope", parents=[common])
    p.add_argument("--graph")
    p.set_defaults(func=cmd_envelope)

    p = sub.add_parser("isolated-cert", parents=[common])
    p.add_argument("--tower", choices=["evolution", "projective"], default="evolution")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--vertex", required=True, help="vertex label; '-' is the empty projective label")
    p.set_defaults(func=cmd_isolated)

    p = sub.add_parser("export", parents=[common])
    p.add_argument("format", choices=["dot", "json"])
    p.add_argument("--graph")
    p.add_argument("--projective", type=int)
    p.add_argument("--evolution", type=int)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("target", choices=["paper-suite"])
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else HOLDS
    try:
        return args.func(args)
    except (UsageError, io.FormatError, GraphError, MorphismError, DepthError, LiftError,
            TowerError, UniversalError, EvolutionError) as exc:
        sys.stderr.write(f"retractoscope: {exc}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
