"""Beer distances from one source to every vertex.

Plain distances come from a binary-heap Dijkstra.  Beer distances then
follow from one pass over the faces in breadth-first order from a face
holding the source: each face adds one new vertex ``c`` opposite the edge
``(a, b)`` it shares with its predecessor, and a shortest beer walk to
``c`` passes through ``a`` or ``b``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, dijkstra

from .exceptions import UnreachableError
from .graph import INF, PathInG
from .paths import PathContext

#: predecessor bits: the walk to p(v) is a plain shortest path, or a beer walk
PLAIN, BEER = 0, 1


@dataclass(frozen=True)
class SsspBeerResult:
    """``dist``/``dist_b`` from ``source``; ``pred[v] = -1`` marks vertices of
    the start face, whose beer walks come straight from the tables."""

    source: int
    dist: np.ndarray
    dist_b: np.ndarray
    pred: np.ndarray
    bit: np.ndarray
    sp_pred: np.ndarray
    ctx: PathContext


def _face_graph(ctx: PathContext):
    mat = getattr(ctx, "_face_mat", None)
    if mat is None:
        ft = ctx.dual.ft
        nf = ctx.dual.n_faces
        both = np.flatnonzero((ft.under >= 0) & (ft.over >= 0))
        x, y = ft.under[both], ft.over[both]
        mat = csr_matrix((np.ones(2 * len(x), dtype=np.int8),
                          (np.concatenate([x, y]), np.concatenate([y, x]))), shape=(nf, nf))
        ctx._face_mat = mat
    return mat


def _weights_matrix(ctx: PathContext):
    mat = getattr(ctx, "_w_mat", None)
    if mat is None:
        g = ctx.graph
        mat = csr_matrix((g.ew, (g.eu, g.ev)), shape=(g.n, g.n))
        ctx._w_mat = mat
    return mat


def sssp_beer(ctx: PathContext, s: int) -> SsspBeerResult:
    g = ctx.graph
    n = g.n
    if not 0 <= s < n:
        raise IndexError("vertex id out of range")
    dist, sp_pred = dijkstra(_weights_matrix(ctx), directed=False, indices=s,
                             return_predecessors=True)
    dual = ctx.dual
    ft = dual.ft
    root = dual._face_of[s]
    if dual.n_faces > 1:
        order, fpred = breadth_first_order(_face_graph(ctx), root, directed=False,
                                           return_predecessors=True)
        kids = order[1:]
        fe = ft.edges[kids]
        other = np.where(ft.under[fe] == kids[:, None], ft.over[fe], ft.under[fe])
        col = np.argmax(other == fpred[kids][:, None], axis=1)
        shared = fe[np.arange(len(kids)), col]
        a_arr = g.eu[shared]
        b_arr = g.ev[shared]
        c_arr = dual.faces[kids].sum(axis=1) - a_arr - b_arr
        # edge ids of (a, c) and (b, c) inside each face
        pick = ft.edges[kids]
        ends_u, ends_v = g.eu[pick], g.ev[pick]
        has_a = (ends_u == a_arr[:, None]) | (ends_v == a_arr[:, None])
        has_c = (ends_u == c_arr[:, None]) | (ends_v == c_arr[:, None])
        has_b = (ends_u == b_arr[:, None]) | (ends_v == b_arr[:, None])
        ac = pick[np.arange(len(kids)), np.argmax(has_a & has_c, axis=1)]
        bc = pick[np.arange(len(kids)), np.argmax(has_b & has_c, axis=1)]
        steps = zip(a_arr.tolist(), b_arr.tolist(), c_arr.tolist(), ac.tolist(), bc.tolist())
    else:
        steps = iter(())
    d = dist.tolist()
    db = [INF] * n
    pred = [-1] * n
    bit = [PLAIN] * n
    w, eb = ctx._w, ctx._eb
    db[s] = ctx._vb[s]
    for x in dual._faces_list[root]:
        if x != s:
            db[x] = eb[g.edge_id(s, x)]
    for a, b, c, e_ac, e_bc in steps:
        best, p, k = d[a] + eb[e_ac], a, PLAIN
        cand = db[a] + w[e_ac]
        if cand < best:
            best, k = cand, BEER
        cand = d[b] + eb[e_bc]
        if cand < best:
            best, p, k = cand, b, PLAIN
        cand = db[b] + w[e_bc]
        if cand < best:
            best, p, k = cand, b, BEER
        db[c], pred[c], bit[c] = best, p, k
    return SsspBeerResult(s, dist, np.asarray(db), np.asarray(pred), np.asarray(bit, dtype=np.int8),
                          sp_pred, ctx)


def _plain_path(res: SsspBeerResult, v: int) -> list:
    out = [v]
    pred = res.sp_pred
    while v != res.source:
        v = int(pred[v])
        out.append(v)
    out.reverse()
    return out


def sssp_beer_vertices(res: SsspBeerResult, v: int) -> list:
    """Beer walk from the source to ``v`` in the normalized graph."""
    if res.dist_b[v] == INF:
        raise UnreachableError(f"no beer walk from {res.source} to {v}")
    tail: list = []
    walk = res.ctx.tables.walk
    while True:
        p = int(res.pred[v])
        if p < 0:
            head = walk(res.source, v)
            break
        if res.bit[v] == PLAIN:
            head = _plain_path(res, p) + walk(p, v)[1:]
            break
        tail.append(v)
        v = p
    tail.reverse()
    return head + tail


def sssp_beer_path(res: SsspBeerResult, v: int) -> PathInG:
    """Beer walk from the source to ``v`` in the ORIGINAL input graph."""
    norm = res.ctx.norm
    verts = norm.expand_walk(sssp_beer_vertices(res, v))
    orig = norm.original
    total = 0.0
    for a, b in zip(verts, verts[1:]):
        total += orig.weight(a, b)
    store = next(i for i, x in enumerate(verts) if orig.is_beer[x])
    return PathInG(tuple(verts), total, store)
