"""Command-line front end: ``gpcube <subcommand> ...``.

Exit codes: 0 success, 1 a checked property fails, 2 usage error,
3 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from typing import Optional, Sequence

from . import graphs
from .blocks import block_decomposition, end_block_gp_set
from .errors import (
    DisconnectedGraphError,
    GraphFormatError,
    NotPartialCubeError,
    PreconditionError,
    SolverLimitError,
)
from .gp_core import extendable_edges, is_edge_gp_set
from .metric import all_pairs_distances
from .paper_check import normalise_scope, run_paper_check
from .setfile import loads_edge_set
from .solver import BOUND_MODES, DEFAULT_EDGE_LIMIT, conjecture_sweep, solve_gp_e
from .symmetry import automorphisms, orbit_count
from .theta import class_size_formula_check, is_partial_cube, theta_partition

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _pairs(g, x):
    return [list(p) for p in x.pairs(g)]


@contextmanager
def _sink(args):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            yield fh
    else:
        yield sys.stdout


def _emit(args, text: str) -> None:
    with _sink(args) as fh:
        fh.write(text if text.endswith("\n") else text + "\n")


def _emit_json(args, doc) -> None:
    _emit(args, json.dumps(doc, sort_keys=False))


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _graph(args) -> graphs.Graph:
    path = getattr(args, "graph", None)
    if path is not None and args.family is not None:
        raise UsageError("give either a graph file or --family, not both")
    if path is None and args.family is None:
        raise UsageError("a graph file or --family is required")
    if args.family is not None:
        if args.family != "fig3" and args.n is None:
            raise UsageError(f"--family {args.family} needs --n")
        return graphs.family_graph(args.family, args.n)
    if args.n is not None:
        raise UsageError("--n only applies with --family")
    return graphs.loads_graph(_read_text(path), allow_disconnected=args.allow_disconnected)


def cmd_gen(args) -> int:
    if args.family is None:
        raise UsageError("gen needs --family")
    g = _graph(args)
    if args.json:
        _emit_json(args, {"order": g.order, "edges": [list(e) for e in g.edges], "labels": g.labels})
    else:
        _emit(args, graphs.dumps_graph(g))
    return EXIT_OK


def cmd_dist(args) -> int:
    g = _graph(args)
    if not g.is_connected():
        pair = g.unreachable_pair()
        raise DisconnectedGraphError(*pair)
    d = all_pairs_distances(g)
    if args.query:
        u, v = args.query
        if not (0 <= u < g.order and 0 <= v < g.order):
            raise UsageError(f"--query vertices must lie in 0..{g.order - 1}")
        if args.json:
            _emit_json(args, {"u": u, "v": v, "distance": d(u, v)})
        else:
            _emit(args, str(d(u, v)))
        return EXIT_OK
    rows = d.dist.tolist()
    if args.json:
        _emit_json(args, {"order": g.order, "diameter": d.diameter, "distances": rows})
    else:
        _emit(args, "\n".join(" ".join(str(x) for x in row) for row in rows))
    return EXIT_OK


def cmd_theta(args) -> int:
    g = _graph(args)
    d = all_pairs_distances(g)
    if not is_partial_cube(g, d):
        if args.json:
            _emit_json(args, {"partial_cube": False})
        else:
            _emit(args, "not a partial cube")
        return EXIT_FAIL
    part = theta_partition(g, d)
    ok = True
    formula = None
    if args.check_formula:
        if args.family not in ("fibonacci", "lucas"):
            raise UsageError("--check-formula needs --family fibonacci or lucas")
        formula = class_size_formula_check(args.family, args.n, graph=g)
        ok = formula.ok
    if args.json:
        doc = {
            "partial_cube": True,
            "classes": [
                {"class": k + 1,
                 "coordinate": part.coordinates[k] if part.coordinates else None,
                 "size": len(c),
                 "edges": [list(g.edges[e]) for e in c]}
                for k, c in enumerate(part.classes)
            ],
        }
        if formula is not None:
            doc["formula"] = {"ok": formula.ok, "sizes": formula.sizes, "expected": formula.expected}
        _emit_json(args, doc)
    else:
        lines = [f"partial cube, {len(part)} classes", "class coord size"]
        for k, c in enumerate(part.classes):
            coord = part.coordinates[k] if part.coordinates else "-"
            lines.append(f"{k + 1:>5} {coord:>5} {len(c):>4}")
        if formula is not None:
            lines.append(f"formula {'matches' if formula.ok else 'MISMATCH'}: "
                         f"sizes {formula.sizes}, expected {formula.expected}")
        _emit(args, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def _load_set(args, g, d):
    if args.edges is None:
        raise UsageError("--edges is required")
    if args.edges == "-" and getattr(args, "graph", None) == "-":
        raise UsageError("graph and edge set cannot both come from stdin")
    return loads_edge_set(_read_text(args.edges), g, d)


def _verdict_doc(g, d, x, maximal: bool):
    verdict = is_edge_gp_set(g, d, x)
    doc = {"size": len(x), "general_position": verdict.is_gp}
    ok = verdict.is_gp
    if not verdict.is_gp:
        doc["violating_triple"] = [list(g.edges[e]) for e in verdict.violating_triple]
    if maximal:
        ext = extendable_edges(g, d, x) if verdict.is_gp else []
        doc["maximal"] = verdict.is_gp and not ext
        doc["extendable"] = [list(g.edges[e]) for e in ext]
        ok = ok and doc["maximal"]
    return ok, doc


def _verdict_text(doc) -> str:
    lines = [f"size {doc['size']}", f"general position: {'yes' if doc['general_position'] else 'no'}"]
    if "violating_triple" in doc:
        lines.append("violating triple: " + " ".join(f"{u}-{v}" for u, v in doc["violating_triple"]))
    if "maximal" in doc:
        lines.append(f"maximal: {'yes' if doc['maximal'] else 'no'}")
        if doc["extendable"]:
            lines.append("extendable by: " + " ".join(f"{u}-{v}" for u, v in doc["extendable"]))
    return "\n".join(lines)


def cmd_verify(args, force_maximal: bool = False) -> int:
    g = _graph(args)
    d = all_pairs_distances(g)
    x = _load_set(args, g, d)
    ok, doc = _verdict_doc(g, d, x, args.maximal or force_maximal)
    if args.json:
        _emit_json(args, doc)
    else:
        _emit(args, _verdict_text(doc))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_maximal(args) -> int:
    return cmd_verify(args, force_maximal=True)


def cmd_solve(args) -> int:
    g = _graph(args)
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    d = all_pairs_distances(g)
    res = solve_gp_e(g, d, enumerate_all=args.enumerate_all, bound_mode=args.bound,
                     thread_count=args.threads, edge_limit=args.edge_limit)
    doc = {
        "optimum": res.optimum,
        "witnesses": [_pairs(g, w) for w in res.witnesses],
        "nodes_explored": res.nodes_explored,
    }
    if args.enumerate_all and g.order <= 20:
        doc["orbit_count"] = orbit_count(g, res.witnesses, automorphisms(g, d))
    if args.json:
        _emit_json(args, doc)
        return EXIT_OK
    lines = [f"gp_e = {res.optimum}", f"nodes explored: {res.nodes_explored}"]
    if "orbit_count" in doc:
        lines.append(f"maximum sets: {len(res.witnesses)}, orbits under automorphisms: {doc['orbit_count']}")
    for k, w in enumerate(res.witnesses):
        lines.append(f"witness {k + 1}: " + " ".join(f"{u}-{v}" for u, v in w.pairs(g)))
    _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_conjecture(args) -> int:
    if args.max_n < 2:
        raise UsageError("--max-n must be at least 2")
    rows = conjecture_sweep(args.max_n, thread_count=args.threads)
    if args.json:
        _emit_json(args, [
            {"n": r.n, "gp_e": r.gp_e, "two_fib": r.target, "status": r.status,
             "witness": [list(graphs.fibonacci_cube(r.n).edges[e]) for e in r.witness]}
            for r in rows
        ])
    else:
        lines = ["  n  gp_e  2F_n  status"]
        lines += [f"{r.n:>3} {r.gp_e:>5} {r.target:>5}  {r.status}" for r in rows]
        _emit(args, "\n".join(lines))
    return EXIT_FAIL if any(r.status == "LESS" for r in rows) else EXIT_OK


def cmd_blocks(args) -> int:
    g = _graph(args)
    dec = block_decomposition(g)
    doc = {
        "blocks": [[list(g.edges[e]) for e in b] for b in dec.blocks],
        "cut_vertices": dec.cut_vertices,
        "end_blocks": dec.end_blocks,
    }
    if args.gp_set:
        x = end_block_gp_set(g)
        doc["gp_set"] = _pairs(g, x)
    if args.json:
        _emit_json(args, doc)
        return EXIT_OK
    lines = [f"{len(dec.blocks)} blocks, cut vertices: {' '.join(map(str, dec.cut_vertices)) or '-'}"]
    for k, b in enumerate(doc["blocks"]):
        tag = " (end)" if k in dec.end_blocks else ""
        lines.append(f"block {k}{tag}: " + " ".join(f"{u}-{v}" for u, v in b))
    if args.gp_set:
        lines.append(f"end-block gp set ({len(doc['gp_set'])} edges): "
                     + " ".join(f"{u}-{v}" for u, v in doc["gp_set"]))
    _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_autos(args) -> int:
    g = _graph(args)
    autos = automorphisms(g)
    if args.json:
        _emit_json(args, {"count": len(autos), "automorphisms": [list(p) for p in autos]})
    else:
        _emit(args, f"{len(autos)} automorphisms\n" + "\n".join(" ".join(map(str, p)) for p in autos))
    return EXIT_OK


def cmd_paper_check(args) -> int:
    try:
        scope = normalise_scope(args.scope)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    with _sink(args) as fh:
        def show(r):
            fh.write(f"{'PASS' if r.ok else 'FAIL'}  [{r.section}] {r.key}: {r.title} -- {r.detail} "
                     f"({r.seconds:.2f} s)\n")
            fh.flush()

        results = run_paper_check(scope, seed=args.seed, threads=args.threads, on_result=show)
        failed = sum(not r.ok for r in results)
        fh.write(f"{len(results) - failed}/{len(results)} claims pass\n")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=graphs.FAMILIES)
    common.add_argument("--n", type=int)
    common.add_argument("--allow-disconnected", action="store_true")
    common.add_argument("--json", action="store_true")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="gpcube", description="Edge general position sets in partial cubes.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_graph(name, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("graph", nargs="?", help="graph file, or - for stdin")
        return sp

    sp = sub.add_parser("gen", parents=[common], help="write a family graph")
    sp.set_defaults(func=cmd_gen)

    sp = with_graph("dist", "distance matrix")
    sp.add_argument("--query", nargs=2, type=int, metavar=("U", "V"))
    sp.set_defaults(func=cmd_dist)

    sp = with_graph("theta", "Θ-classes and partial cube test")
    sp.add_argument("--check-formula", action="store_true")
    sp.set_defaults(func=cmd_theta)

    for name, func, text in (("verify", cmd_verify, "check an edge set"),
                             ("maximal", cmd_maximal, "check an edge set is a maximal gp set")):
        sp = with_graph(name, text)
        sp.add_argument("--edges", help="edge set file, or - for stdin")
        sp.add_argument("--maximal", action="store_true")
        sp.set_defaults(func=func)

    sp = with_graph("solve", "exact gp_e")
    sp.add_argument("--enumerate-all", action="store_true")
    sp.add_argument("--bound", choices=BOUND_MODES, default="cover")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--edge-limit", type=int, default=DEFAULT_EDGE_LIMIT)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("conjecture", parents=[common], help="gp_e of Fibonacci cubes against 2F_n")
    sp.add_argument("--max-n", type=int, default=6)
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=cmd_conjecture)

    sp = with_graph("blocks", "blocks and cut vertices")
    sp.add_argument("--gp-set", action="store_true")
    sp.set_defaults(func=cmd_blocks)

    sp = with_graph("autos", "automorphism group")
    sp.set_defaults(func=cmd_autos)

    sp = sub.add_parser("paper-check", parents=[common], help="rerun every reproduced claim")
    sp.add_argument("scope", nargs="?", default="all", help="all, or a section number 1-4")
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=cmd_paper_check)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gpcube {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PreconditionError, SolverLimitError) as exc:
        print(f"gpcube {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphFormatError, DisconnectedGraphError, NotPartialCubeError, OSError) as exc:
        print(f"gpcube {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
