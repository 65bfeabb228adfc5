"""Command line front end: ``beerpath <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .engine import BeerPathEngine
from .exceptions import BeerPathError
from .fixtures import FIXTURES, emit_fixture, get_fixture, query_trace
from .graph import dumps_graph, read_graph
from .harness import gen_path_maximal, gen_random_maximal, gen_random_outerplanar, oracle_all_pairs
from .normalize import normalize


def _num(x: float) -> str:
    return "inf" if x == float("inf") else repr(float(x))


def _size(text: str) -> int:
    return int(float(text))


def cmd_gen(args, out):
    if args.tree:
        g = gen_random_outerplanar(args.n, args.seed, beer_fraction=args.beer_frac, tree=True)
    elif args.chords is not None:
        g = gen_random_outerplanar(args.n, args.seed, chord_keep_prob=args.chords,
                                   beer_fraction=args.beer_frac)
    else:
        g = gen_random_maximal(args.n, args.seed, args.beer_frac)
    out.write(dumps_graph(g) + "\n")
    return 0


def cmd_normalize(args, out):
    """Normalized graph on the first line, the added edges as a JSON array on the second."""
    norm = normalize(read_graph(args.graph))
    out.write(dumps_graph(norm.graph) + "\n")
    out.write(json.dumps([list(e) for e in norm.added_edges]) + "\n")
    return 0


def cmd_dual(args, out):
    eng = BeerPathEngine(read_graph(args.graph), args.root)
    dual = eng.dual
    doc = {
        "root": dual.root,
        "faces": [list(dual.face_vertices(f)) for f in range(dual.n_faces)],
        "edges": [[f, g, list(e)] for f, g, e in dual.dual_edges()],
    }
    out.write(json.dumps(doc) + "\n")
    return 0


def cmd_query(args, out):
    eng = BeerPathEngine(read_graph(args.graph))
    n = eng.n
    for x in (args.source, args.target):
        if not 0 <= x < n:
            raise BeerPathError(f"vertex {x} out of range [0, {n})")
    if args.mode == "dist":
        out.write(_num(eng.query_dist(args.source, args.target)) + "\n")
    elif args.mode == "beer-dist":
        out.write(_num(eng.query_beer_dist(args.source, args.target)) + "\n")
    else:
        p = eng.query_beer_path(args.source, args.target)
        out.write(" ".join(map(str, p.vertices)) + "\n")
        out.write(f"weight={_num(p.weight)}\n")
    return 0


def cmd_sssp(args, out):
    eng = BeerPathEngine(read_graph(args.graph))
    if not 0 <= args.source < eng.n:
        raise BeerPathError(f"vertex {args.source} out of range [0, {eng.n})")
    res = eng.sssp(args.source)
    for v in range(eng.n):
        out.write(f"{v} {_num(res.dist[v])} {_num(res.dist_b[v])}\n")
    return 0


def _verify_graph(graph, label: str, out) -> bool:
    """Engine against the brute-force oracle on every pair; one line per graph."""
    eng = BeerPathEngine(graph)
    orc = oracle_all_pairs(graph)
    n = graph.n
    u, v = np.divmod(np.arange(n * n), n)
    d, b = eng.query_many(u, v)
    bad_d = int((d != orc.dist[u, v]).sum())
    bad_b = int((b != orc.dist_b[u, v]).sum())
    bad_p = 0
    if graph.beer:
        for s in range(n):
            for t in range(n):
                p = eng.query_beer_path(s, t)
                ok = (p.weight == orc.dist_b[s, t] and p.vertices[0] == s and p.vertices[-1] == t
                      and p.store is not None
                      and all(graph.has_edge(x, y) for x, y in zip(p.vertices, p.vertices[1:])))
                bad_p += not ok
    ok = bad_d == bad_b == bad_p == 0
    out.write(f"{label} n={n} m={graph.m} stores={len(graph.beer)} "
              f"dist_mismatch={bad_d} beer_mismatch={bad_b} path_mismatch={bad_p} "
              f"{'ok' if ok else 'FAIL'}\n")
    return ok


def cmd_verify(args, out):
    ok = True
    if args.fixture:
        g = get_fixture(args.fixture)
        ok &= _verify_graph(g, args.fixture, out)
        if args.source is not None and args.target is not None:
            out.write(query_trace(g, args.source, args.target))
    else:
        rng = np.random.default_rng(args.seed)
        for trial in range(args.trials):
            n = int(rng.integers(3, args.n + 1))
            seed = int(rng.integers(0, 2**31))
            if trial % 2 == 0:
                g = gen_random_maximal(n, seed, 0.1)
                label = f"trial {trial} maximal seed={seed}"
            else:
                g = gen_random_outerplanar(n, seed, 0.5, 0.1)
                label = f"trial {trial} outerplanar seed={seed}"
            ok &= _verify_graph(g, label, out)
    out.write("verify " + ("ok" if ok else "FAIL") + "\n")
    return 0 if ok else 1


def cmd_bench(args, out):
    rng = np.random.default_rng(args.seed)
    for n in [_size(s) for s in args.sizes.split(",")]:
        g = gen_random_maximal(n, args.seed, 0.1) if not args.path else gen_path_maximal(n, args.seed, (n // 2,))
        t0 = time.perf_counter()
        eng = BeerPathEngine(g)
        eng.oracle
        build = time.perf_counter() - t0
        u = rng.integers(0, n, args.queries)
        v = rng.integers(0, n, args.queries)
        t0 = time.perf_counter()
        eng.query_many(u, v)
        per = (time.perf_counter() - t0) / max(args.queries, 1)
        out.write(f"n={n} build_s={build:.3f} query_us={per * 1e6:.3f}\n")
    return 0


def cmd_fixtures(args, out):
    if args.list:
        out.write("\n".join(FIXTURES) + "\n")
        return 0
    if args.emit is None:
        raise BeerPathError("give --emit NAME or --list")
    out.write(emit_fixture(args.emit))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="beerpath", description="Beer-path queries on outerplanar graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random graph")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--beer-frac", type=float, default=0.1)
    mode = g.add_mutually_exclusive_group()
    mode.add_argument("--chords", type=float, default=None, help="keep each chord with this probability")
    mode.add_argument("--tree", action="store_true", help="random tree instead of a polygon")
    g.set_defaults(func=cmd_gen)

    g = sub.add_parser("normalize", help="print the maximal GTI graph")
    g.add_argument("--graph", required=True)
    g.set_defaults(func=cmd_normalize)

    g = sub.add_parser("dual", help="print faces with their dual parents")
    g.add_argument("--graph", required=True)
    g.add_argument("--root", type=int, default=None)
    g.set_defaults(func=cmd_dual)

    g = sub.add_parser("query", help="distance, beer distance or beer path between two vertices")
    g.add_argument("--graph", required=True)
    g.add_argument("--from", dest="source", type=int, required=True)
    g.add_argument("--to", dest="target", type=int, required=True)
    g.add_argument("--mode", choices=("dist", "beer-dist", "beer-path"), default="beer-dist")
    g.set_defaults(func=cmd_query)

    g = sub.add_parser("sssp", help="distances and beer distances from one source")
    g.add_argument("--graph", required=True)
    g.add_argument("--source", type=int, required=True)
    g.set_defaults(func=cmd_sssp)

    g = sub.add_parser("verify", help="check the engine against the brute-force oracle")
    g.add_argument("--n", type=int, default=50)
    g.add_argument("--trials", type=int, default=10)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--fixture", choices=sorted(FIXTURES), default=None)
    g.add_argument("--from", dest="source", type=int, default=None)
    g.add_argument("--to", dest="target", type=int, default=None)
    g.set_defaults(func=cmd_verify)

    g = sub.add_parser("bench", help="build and query timings")
    g.add_argument("--sizes", default="1e4,1e5")
    g.add_argument("--queries", type=_size, default=100000)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--path", action="store_true", help="use path-shaped graphs")
    g.set_defaults(func=cmd_bench)

    g = sub.add_parser("fixtures", help="print a named fixture graph")
    g.add_argument("--emit", default=None)
    g.add_argument("--list", action="store_true")
    g.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except (BeerPathError, OSError, ValueError, KeyError) as exc:
        print(f"beerpath: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
