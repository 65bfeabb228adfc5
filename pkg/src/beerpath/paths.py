"""Shortest beer path reporting in time proportional to the path length.

Two vertices of one fan (``s`` and a neighbour of ``s``) are answered from
the fan directly.  Otherwise the walk must cross every shared edge along the
dual path from ``s``'s face to ``t``'s face; picking one such edge per fan
gives a short column DAG whose edges all live inside single fans, and a
dynamic program over it finds the beer distance and the path skeleton.
"""
from __future__ import annotations

import gc
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import NamedTuple

from .beerbase import BeerBaseTables, build_beer_base
from .dual import Chains, DualTree, build_chains, build_dual
from .exceptions import NotInFanError, NotOnChainError, SameFanError, UnreachableError
from .graph import INF, PathInG
from .normalize import NormalizedGraph

PLAIN, BEER = 0, 1


class PathContext:
    """Everything path queries read: the normalized graph, its dual, the
    beer-base tables and the chains with their detour RMQ."""

    def __init__(self, norm: NormalizedGraph, dual: DualTree | None = None,
                 tables: BeerBaseTables | None = None):
        self.norm = norm
        self.graph = norm.graph
        self.dual = dual if dual is not None else build_dual(norm)
        self.tables = tables if tables is not None else build_beer_base(self.dual)
        self.chains: Chains = build_chains(self.dual, self.tables)
        g = self.graph
        self._w = g.ew.tolist()
        self._eb = self.tables.edge_beer.tolist()
        self._vb = self.tables.vertex_beer.tolist()
        self._det = self.chains.detour.tolist()
        self._is_beer = g.is_beer.tolist()
        self._orig_w = None

    def weight(self, u: int, v: int) -> float:
        return self._w[self.graph.edge_id(u, v)]

    def in_fan(self, v: int, u: int) -> bool:
        return u == v or self.graph.has_edge(u, v)


def build_context(norm: NormalizedGraph, root_face=None) -> PathContext:
    return PathContext(norm, build_dual(norm, root_face))


# -- fan queries ---------------------------------------------------------------------

def _positions(ctx: PathContext, v: int, u: int, w: int) -> tuple[int, int]:
    try:
        return ctx.chains.position(v, u), ctx.chains.position(v, w)
    except NotOnChainError as exc:
        raise NotInFanError(f"({u},{w}) not both in the fan of {v}") from exc


def _check_fan(ctx: PathContext, v: int, u: int, w: int) -> None:
    if not (ctx.in_fan(v, u) and ctx.in_fan(v, w)):
        raise NotInFanError(f"({u},{w}) not both in the fan of {v}")


def fan_dist(ctx: PathContext, v: int, u: int, w: int) -> float:
    """``dist(u, w)`` for two vertices of the fan around ``v``."""
    _check_fan(ctx, v, u, w)
    return _fan_dist(ctx, v, u, w)


def _fan_dist(ctx: PathContext, v: int, u: int, w: int) -> float:
    if u == w:
        return 0.0
    if u == v or w == v:
        return ctx.weight(u, w)
    i, j = _positions(ctx, v, u, w)
    pre = ctx.chains._prefix_l
    return min(abs(pre[i] - pre[j]), ctx.weight(u, v) + ctx.weight(v, w))


def _chain_walk(ctx: PathContext, i: int, j: int) -> list:
    verts = ctx.chains._verts_l
    if i <= j:
        return verts[i:j + 1]
    return verts[j:i + 1][::-1]


def _sp_vertices(ctx: PathContext, v: int, u: int, w: int) -> list:
    if u == w:
        return [u]
    if u == v or w == v:
        return [u, w]
    i, j = _positions(ctx, v, u, w)
    pre = ctx.chains._prefix_l
    if ctx.weight(u, v) + ctx.weight(v, w) <= abs(pre[i] - pre[j]):
        return [u, v, w]
    return _chain_walk(ctx, i, j)


def fan_sp(ctx: PathContext, v: int, u: int, w: int) -> PathInG:
    """Shortest path between two fan vertices; through ``v`` on ties."""
    _check_fan(ctx, v, u, w)
    return _in_graph(ctx, _sp_vertices(ctx, v, u, w))


def _beer_choice(ctx: PathContext, v: int, u: int, w: int):
    """Best beer route between fan vertices as ``(value, kind, extra)``."""
    if u == w:
        return ctx._vb[u], "tables", None
    if u == v or w == v:
        return ctx._eb[ctx.graph.edge_id(u, w)], "tables", None
    eid = ctx.graph.edge_id
    e_uv, e_vw = eid(u, v), eid(v, w)
    w_uv, w_vw = ctx._w[e_uv], ctx._w[e_vw]
    best = ctx._eb[e_uv] + w_vw
    kind = "beer-then-edge"
    extra = None
    cand = w_uv + ctx._eb[e_vw]
    if cand < best:
        best, kind = cand, "edge-then-beer"
    i, j = _positions(ctx, v, u, w)
    lo, hi = (i, j) if i < j else (j, i)
    k = ctx.chains.rmq.query(lo, hi - 1)
    pre = ctx.chains._prefix_l
    cand = (pre[hi] - pre[lo]) + ctx._det[k]
    if cand < best:
        best, kind, extra = cand, "chain", (i, j, k)
    return best, kind, extra


def fan_beer_dist(ctx: PathContext, v: int, u: int, w: int) -> float:
    """``dist_B(u, w)`` for two vertices of the fan around ``v``."""
    _check_fan(ctx, v, u, w)
    return _beer_choice(ctx, v, u, w)[0]


def _beer_vertices(ctx: PathContext, v: int, u: int, w: int) -> list:
    value, kind, extra = _beer_choice(ctx, v, u, w)
    if value == INF:
        raise UnreachableError(f"no beer walk between {u} and {w}")
    walk = ctx.tables.walk
    if kind == "tables":
        return walk(u, w)
    if kind == "beer-then-edge":
        return walk(u, v) + [w]
    if kind == "edge-then-beer":
        return [u] + walk(v, w)
    i, j, k = extra
    verts = ctx.chains._verts_l
    if i < j:
        return _chain_walk(ctx, i, k) + walk(verts[k], verts[k + 1])[1:-1] + _chain_walk(ctx, k + 1, j)
    return _chain_walk(ctx, i, k + 1) + walk(verts[k + 1], verts[k])[1:-1] + _chain_walk(ctx, k, j)


def fan_beer_path(ctx: PathContext, v: int, u: int, w: int) -> PathInG:
    """Shortest beer walk between two fan vertices, in the normalized graph."""
    _check_fan(ctx, v, u, w)
    return _in_graph(ctx, _beer_vertices(ctx, v, u, w))


def _in_graph(ctx: PathContext, verts: list) -> PathInG:
    w = ctx._w
    eid = ctx.graph.edge_id
    total = 0.0
    for a, b in zip(verts, verts[1:]):
        total += w[eid(a, b)]
    store = next((i for i, x in enumerate(verts) if ctx._is_beer[x]), None)
    return PathInG(tuple(verts), total, store)


# -- the column DAG ------------------------------------------------------------------

class DagEdge(NamedTuple):
    """Edge between consecutive columns, both endpoints in the fan of ``context``."""

    src: int
    dst: int
    plain: float
    beer: float
    context: int


@dataclass
class DagH:
    source: int
    target: int
    columns: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    dist: dict = field(default_factory=dict)
    dist_b: dict = field(default_factory=dict)
    # back-pointers: (vertex, state) -> (previous vertex, previous state, edge kind, context)
    back: dict = field(default_factory=dict)

    @property
    def n_columns(self) -> int:
        return len(self.columns)

    @property
    def size(self) -> int:
        return sum(len(c) for c in self.columns) + len(self.edges)


def _connect(ctx: PathContext, dag: DagH, prev: tuple, nxt: tuple, x: int) -> None:
    """Add plain and beer edges from every vertex of ``prev`` to every vertex of ``nxt``.

    Same arithmetic as :func:`_fan_dist` and :func:`_beer_choice`, with the
    chain position and spoke of each vertex looked up once.
    """
    eid = ctx.graph.edge_id
    position = ctx.chains.position
    w, eb, pre, det = ctx._w, ctx._eb, ctx.chains._prefix_l, ctx._det
    rmq = ctx.chains.rmq.query
    spoke = {}
    for y in prev + nxt:
        if y != x and y not in spoke:
            spoke[y] = (position(x, y), eid(x, y))
    edges = dag.edges
    for u in prev:
        for v in nxt:
            if u == v:
                plain, beer = 0.0, ctx._vb[u]
            elif u == x or v == x:
                e = spoke[v if u == x else u][1]
                plain, beer = w[e], eb[e]
            else:
                i, e_u = spoke[u]
                j, e_v = spoke[v]
                lo, hi = (i, j) if i < j else (j, i)
                chain = pre[hi] - pre[lo]
                plain = min(chain, w[e_u] + w[e_v])
                beer = eb[e_u] + w[e_v]
                cand = w[e_u] + eb[e_v]
                if cand < beer:
                    beer = cand
                cand = chain + det[rmq(lo, hi - 1)]
                if cand < beer:
                    beer = cand
            edges.append(DagEdge(u, v, plain, beer, x))


def build_dag(ctx: PathContext, s: int, t: int) -> DagH:
    """Columns of shared edges between ``s``'s and ``t``'s faces, with the DP run."""
    if ctx.in_fan(s, t):
        raise SameFanError(f"{t} lies in the fan of {s}; no DAG is needed")
    dual = ctx.dual
    ix = dual.index
    colours = dual.colours
    faces = dual._faces_list
    fs, ft = dual._face_of[s], dual._face_of[t]
    dag = DagH(s, t, columns=[(s,)])
    dag.dist[s] = 0.0
    dag.dist_b[s] = INF
    f = colours.closest_colour(fs, ft, s)
    x = s
    prev = (s,)
    while True:
        g = ix.second_on_path(f, ft)
        col = dual.shared_edge(f, g)
        _extend(ctx, dag, prev, col, x)
        a, b = col
        fb = colours.closest_colour(g, ft, b)
        if a not in faces[fb]:
            f, x = fb, b
        else:
            f, x = colours.closest_colour(g, ft, a), a
        prev = col
        if t in faces[f]:
            _extend(ctx, dag, prev, (t,), x)
            break
    return dag


def _extend(ctx: PathContext, dag: DagH, prev: tuple, col: tuple, x: int) -> None:
    """Append column ``col`` and relax its vertices over the edges from ``prev``.

    Running the DP while the column's edges are fresh keeps the work local;
    the result equals a separate left-to-right pass.
    """
    k = len(dag.edges)
    _connect(ctx, dag, prev, col, x)
    dag.columns.append(col)
    dist, dist_b, back = dag.dist, dag.dist_b, dag.back
    new = dag.edges[k:]
    for v in col:
        best_b = best_d = INF
        bb = bd = None
        for e in new:
            if e.dst != v:
                continue
            u = e.src
            cand = dist_b[u] + e.plain
            if bb is None or cand < best_b:
                best_b, bb = cand, (u, BEER, PLAIN, e.context)
            cand = dist[u] + e.beer
            if cand < best_b:
                best_b, bb = cand, (u, PLAIN, BEER, e.context)
            cand = dist[u] + e.plain
            if bd is None or cand < best_d:
                best_d, bd = cand, (u, PLAIN, PLAIN, e.context)
        dist[v], dist_b[v] = best_d, best_b
        back[(v, BEER)] = bb
        back[(v, PLAIN)] = bd


def _skeleton(dag: DagH) -> list:
    """DAG edges of the best beer path, as ``(u, v, kind, context)`` from ``s`` to ``t``."""
    out = []
    v, state = dag.target, BEER
    while v != dag.source:
        u, pstate, kind, x = dag.back[(v, state)]
        out.append((u, v, kind, x))
        v, state = u, pstate
    out.reverse()
    return out


def beer_path_vertices(ctx: PathContext, s: int, t: int) -> list:
    """Shortest beer walk from ``s`` to ``t`` in the normalized graph."""
    if ctx.in_fan(s, t):
        if ctx.tables.dist_b(s, t) == INF:
            raise UnreachableError(f"no beer walk between {s} and {t}")
        return ctx.tables.walk(s, t)
    dag = build_dag(ctx, s, t)
    if dag.dist_b[t] == INF:
        raise UnreachableError(f"no beer walk between {s} and {t}")
    verts = [s]
    for u, v, kind, x in _skeleton(dag):
        piece = _beer_vertices(ctx, x, u, v) if kind == BEER else _sp_vertices(ctx, x, u, v)
        verts.extend(piece[1:])
    return verts


@contextmanager
def _gc_paused():
    """Hold off the cyclic collector while one query allocates.

    A long query creates O(L) small acyclic objects; left on, the collector
    rescans them repeatedly and the query stops scaling linearly in L.
    """
    was_on = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_on:
            gc.enable()


def query_beer_path(ctx: PathContext, s: int, t: int) -> PathInG:
    """Shortest beer walk from ``s`` to ``t`` in the ORIGINAL input graph."""
    n = ctx.graph.n
    if not (0 <= s < n and 0 <= t < n):
        raise IndexError("vertex id out of range")
    with _gc_paused():
        verts = ctx.norm.expand_walk(beer_path_vertices(ctx, s, t))
    orig = ctx.norm.original
    if ctx._orig_w is None:
        ctx._orig_w = orig.ew.tolist()
    w = ctx._orig_w
    eid = orig.edge_id
    total = 0.0
    for a, b in zip(verts, verts[1:]):
        total += w[eid(a, b)]
    is_beer = orig.is_beer
    store = next(i for i, x in enumerate(verts) if is_beer[x])
    return PathInG(tuple(verts), total, store)
