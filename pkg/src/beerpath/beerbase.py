"""Beer distances for every edge and every vertex of a maximal GTI graph.

Every edge ``(u, v)`` splits the graph in two: the side holding the root
face of the dual (``R``) and the other side (``NR``).  By the generalized
triangle inequality a shortest beer walk between ``u`` and ``v`` (or from
``u`` back to itself) stays on one side, so a post-order pass computes the
``NR`` values, a pre-order pass the ``R`` values, and the answer is the
smaller of the two.

Witnesses are packed integers ``2 * x + bit``; ``-1`` means an endpoint is
a store and the walk is the edge itself (or the single vertex).  ``bit 0``
says the walk is a beer walk ``u -> x`` followed by the edge ``x -> v``,
``bit 1`` says edge ``u -> x`` followed by a beer walk ``x -> v``.  Edge
witnesses are stored for the direction low id -> high id.
"""
from __future__ import annotations

import numpy as np

from .dual import DualTree, edge_ids
from .exceptions import NotAnEdgeError, UnreachableError
from .graph import INF, BeerGraph, PathInG

NIL = -1

# slots of the per-edge value lists
UV, LO, HI = 0, 1, 2


class BeerBaseTables:
    """Edge and vertex beer distances with reconstruction witnesses."""

    def __init__(self, graph: BeerGraph, dual: DualTree):
        self.graph = graph
        self.dual = dual
        _compute(self, graph, dual)
        self._eb = self.edge_beer.tolist()
        self._vb = self.vertex_beer.tolist()
        self._ew = self.edge_wit.tolist()
        self._vw = self.vertex_wit.tolist()
        self._w = graph.ew.tolist()
        self._lo = graph.eu.tolist()

    # -- lookups ------------------------------------------------------------------
    def dist_b(self, u: int, v: int) -> float:
        if u == v:
            return self._vb[u]
        return self._eb[self.graph.edge_id(u, v)]

    def witness(self, u: int, v: int):
        """``None`` for nil, else ``(x, bit)`` relative to the direction ``u -> v``."""
        if u == v:
            code = self._vw[u]
        else:
            e = self.graph.edge_id(u, v)
            code = self._ew[e]
            if code >= 0 and self._lo[e] != u:
                code ^= 1
        if code < 0:
            return None
        return code >> 1, code & 1

    # -- reconstruction -----------------------------------------------------------
    def walk(self, u: int, v: int) -> list:
        """Vertex sequence of a shortest beer walk; ``u == v`` or an edge."""
        if u != v and not self.graph.has_edge(u, v):
            raise NotAnEdgeError(f"({u},{v}) is not an edge")
        if self.dist_b(u, v) == INF:
            raise UnreachableError(f"no beer walk between {u} and {v}")
        front: list = []
        back: list = []
        edge_id = self.graph.edge_id
        vw, ew, lo = self._vw, self._ew, self._lo
        a, b = u, v
        while True:
            if a == b:
                code = vw[a]
                if code < 0:
                    front.append(a)
                    break
                x = code >> 1
                if code & 1:
                    front.append(a)
                    a = x
                else:
                    back.append(a)
                    b = x
                continue
            e = edge_id(a, b)
            code = ew[e]
            if code < 0:
                front.append(a)
                front.append(b)
                break
            if lo[e] != a:
                code ^= 1
            x = code >> 1
            if code & 1:
                front.append(a)
                a = x
            else:
                back.append(b)
                b = x
        back.reverse()
        return front + back

    def beer_edge_path(self, u: int, v: int) -> PathInG:
        verts = self.walk(u, v)
        g = self.graph
        total = 0.0
        for a, b in zip(verts, verts[1:]):
            total += self._w[g.edge_id(a, b)]
        store = next(i for i, x in enumerate(verts) if g.is_beer[x])
        return PathInG(tuple(verts), total, store)


def build_beer_base(dual: DualTree, graph: BeerGraph | None = None) -> BeerBaseTables:
    return BeerBaseTables(graph if graph is not None else dual.graph, dual)


def beer_edge_path(tables: BeerBaseTables, u: int, v: int) -> PathInG:
    return tables.beer_edge_path(u, v)


def _pick(cands):
    """First-listed minimum of ``(value, witness)`` pairs."""
    best, wit = cands[0]
    for val, w in cands[1:]:
        if val < best:
            best, wit = val, w
    return best, wit


def _compute(tables: BeerBaseTables, graph: BeerGraph, dual: DualTree) -> None:
    n, m = graph.n, graph.m
    eu = graph.eu.tolist()
    w8 = graph.ew.tolist()
    store = graph.is_beer.tolist()
    ft = dual.ft
    under, over = ft.under.tolist(), ft.over.tolist()
    faces = ft.faces.tolist()
    fedges = ft.edges.tolist()
    pe = dual.parent_edge.tolist()
    order = dual.tree.order.tolist()
    root = dual.root

    # values and witnesses, slot UV / LO / HI per edge
    nr = [[INF, INF, INF] for _ in range(m)]
    nrw = [[NIL, NIL, NIL] for _ in range(m)]
    r = [[INF, INF, INF] for _ in range(m)]
    rw = [[NIL, NIL, NIL] for _ in range(m)]

    def loop_slot(e, x):
        return LO if eu[e] == x else HI

    def uv_wit(e, u, code):
        # witness codes are computed for direction u -> v; store them lo -> hi
        if code >= 0 and eu[e] != u:
            code ^= 1
        return code

    # base case: hull edges have a one-edge NR side
    for e in range(m):
        if under[e] >= 0 and over[e] >= 0:
            continue
        a, b = eu[e], graph.ev[e]
        b = int(b)
        sa, sb = store[a], store[b]
        w = w8[e]
        row = nr[e]
        wit = nrw[e]
        if sa or sb:
            row[UV] = w
            row[LO] = 0.0 if sa else 2.0 * w
            row[HI] = 0.0 if sb else 2.0 * w
            wit[LO] = NIL if sa else 2 * b + 1
            wit[HI] = NIL if sb else 2 * a + 1

    def split(f):
        """(u, v, w, e_uv, e_uw, e_vw) with (u, v) the parent edge of face f."""
        e0 = pe[f]
        a, c, b = faces[f]
        e_ac, e_cb, e_ab = fedges[f]
        if e0 == e_ab:
            return a, b, c, e0, e_ac, e_cb
        if e0 == e_ac:
            return a, c, b, e0, e_ab, e_cb
        return c, b, a, e0, e_ac, e_ab

    def nr_loop(e, x):
        s = loop_slot(e, x)
        return nr[e][s], nrw[e][s]

    def r_loop(e, x):
        s = loop_slot(e, x)
        return r[e][s], rw[e][s]

    def nr_uv(e, x):
        """NR beer distance on edge e read from endpoint x, witness relative to x."""
        code = nrw[e][UV]
        if code >= 0 and eu[e] != x:
            code ^= 1
        return nr[e][UV], code

    def r_uv(e, x):
        code = rw[e][UV]
        if code >= 0 and eu[e] != x:
            code ^= 1
        return r[e][UV], code

    # post-order: NR values of each non-root face's parent edge
    for f in reversed(order):
        if f == root:
            continue
        u, v, w, e_uv, e_uw, e_vw = split(f)
        w_uv, w_uw, w_vw = w8[e_uv], w8[e_uw], w8[e_vw]
        uu, uu_w = nr_loop(e_uw, u)
        vv, vv_w = nr_loop(e_vw, v)
        ww_u, _ = nr_loop(e_uw, w)
        ww_v, _ = nr_loop(e_vw, w)
        val, code = _pick([
            (nr_uv(e_uw, u)[0] + w_vw, 2 * w),
            (w_uw + nr_uv(e_vw, w)[0], 2 * w + 1),
            (uu + w_uv, 2 * u),
            (w_uv + vv, 2 * v + 1),
        ])
        row, wit = nr[e_uv], nrw[e_uv]
        row[UV] = val
        wit[UV] = uv_wit(e_uv, u, code)
        lu, lu_w = _pick([(uu, uu_w), (2.0 * w_uw + ww_v, 2 * w + 1), (2.0 * w_uv + vv, 2 * v + 1)])
        lv, lv_w = _pick([(vv, vv_w), (2.0 * w_vw + ww_u, 2 * w + 1), (2.0 * w_uv + uu, 2 * u + 1)])
        su, sv = loop_slot(e_uv, u), loop_slot(e_uv, v)
        row[su], wit[su] = lu, lu_w
        row[sv], wit[sv] = lv, lv_w

    # root face: R values of its three edges from NR values of the other two
    a, c, b = faces[root]
    e_ac, e_cb, e_ab = fedges[root]
    for (u, v, w, e_uv, e_uw, e_vw) in ((a, c, b, e_ac, e_ab, e_cb),
                                        (a, b, c, e_ab, e_ac, e_cb),
                                        (c, b, a, e_cb, e_ac, e_ab)):
        w_uv, w_uw, w_vw = w8[e_uv], w8[e_uw], w8[e_vw]
        uu, uu_w = nr_loop(e_uw, u)
        vv, vv_w = nr_loop(e_vw, v)
        ww_u, _ = nr_loop(e_uw, w)
        ww_v, _ = nr_loop(e_vw, w)
        val, code = _pick([
            (uu + w_uv, 2 * u),
            (nr_uv(e_uw, u)[0] + w_vw, 2 * w),
            (w_uv + vv, 2 * v + 1),
            (w_uw + nr_uv(e_vw, w)[0], 2 * w + 1),
        ])
        row, wit = r[e_uv], rw[e_uv]
        row[UV] = val
        wit[UV] = uv_wit(e_uv, u, code)
        lu, lu_w = _pick([(uu, uu_w), (2.0 * w_uw + ww_v, 2 * w + 1), (2.0 * w_uv + vv, 2 * v + 1)])
        lv, lv_w = _pick([(vv, vv_w), (2.0 * w_vw + ww_u, 2 * w + 1), (2.0 * w_uv + uu, 2 * u + 1)])
        su, sv = loop_slot(e_uv, u), loop_slot(e_uv, v)
        row[su], wit[su] = lu, lu_w
        row[sv], wit[sv] = lv, lv_w

    # pre-order: R values of the two child-side edges of each non-root face
    for f in order:
        if f == root:
            continue
        p, q, c, e_pq, e_pc, e_qc = split(f)
        for (u, v, w, e_uv, e_uw, e_vw) in ((c, q, p, e_qc, e_pc, e_pq),
                                            (c, p, q, e_pc, e_qc, e_pq)):
            # (v, w) is the parent edge; (u, w) is the sibling child-side edge
            w_uv, w_uw, w_vw = w8[e_uv], w8[e_uw], w8[e_vw]
            uu_nr, uu_nr_w = nr_loop(e_uw, u)
            ww_nr, _ = nr_loop(e_uw, w)
            vv_r, vv_r_w = r_loop(e_vw, v)
            ww_r, _ = r_loop(e_vw, w)
            val, code = _pick([
                (uu_nr + w_uv, 2 * u),
                (nr_uv(e_uw, u)[0] + w_vw, 2 * w),
                (w_uv + vv_r, 2 * v + 1),
                (w_uw + r_uv(e_vw, w)[0], 2 * w + 1),
            ])
            row, wit = r[e_uv], rw[e_uv]
            row[UV] = val
            wit[UV] = uv_wit(e_uv, u, code)
            lu, lu_w = _pick([(uu_nr, uu_nr_w), (2.0 * w_uv + vv_r, 2 * v + 1),
                              (2.0 * w_uw + ww_r, 2 * w + 1)])
            lv, lv_w = _pick([(vv_r, vv_r_w), (2.0 * w_uv + uu_nr, 2 * u + 1),
                              (2.0 * w_vw + ww_nr, 2 * w + 1)])
            su, sv = loop_slot(e_uv, u), loop_slot(e_uv, v)
            row[su], wit[su] = lu, lu_w
            row[sv], wit[sv] = lv, lv_w

    # combine the two sides; R wins ties
    nr_a = np.asarray(nr, dtype=np.float64).reshape(m, 3)
    r_a = np.asarray(r, dtype=np.float64).reshape(m, 3)
    nrw_a = np.asarray(nrw, dtype=np.int64).reshape(m, 3)
    rw_a = np.asarray(rw, dtype=np.int64).reshape(m, 3)
    del nr, r, nrw, rw
    take_nr = nr_a < r_a
    best = np.where(take_nr, nr_a, r_a)
    bwit = np.where(take_nr, nrw_a, rw_a)
    lo, hi = graph.eu, graph.ev
    is_beer = graph.is_beer
    edge_beer = best[:, UV].copy()
    edge_wit = bwit[:, UV].copy()
    edge_wit[is_beer[lo] | is_beer[hi]] = NIL
    # each vertex reads its loop value off the hull edge (v, v+1)
    v = np.arange(n)
    keys = graph.eu * n + graph.ev
    nxt = (v + 1) % n
    e_hull = np.searchsorted(keys, np.minimum(v, nxt) * n + np.maximum(v, nxt))
    slot = np.where(lo[e_hull] == v, LO, HI)
    vertex_beer = best[e_hull, slot]
    vertex_wit = bwit[e_hull, slot]
    vertex_wit[is_beer] = NIL
    vertex_beer[is_beer] = 0.0
    edge_wit, vertex_wit = _canonical_witnesses(graph, dual.ft, edge_beer, edge_wit,
                                                vertex_beer, vertex_wit)
    tables.nr = nr_a
    tables.r = r_a
    tables.edge_beer = edge_beer
    tables.edge_wit = edge_wit
    tables.vertex_beer = vertex_beer
    tables.vertex_wit = vertex_wit


def _canonical_witnesses(graph: BeerGraph, ft, edge_beer, edge_wit, vertex_beer, vertex_wit):
    """Re-pick witnesses by a fixed local order so walks do not depend on the root.

    The side split above breaks exact ties by which side faces the root.
    Here each entry takes the first candidate, in an order fixed by vertex
    ids, whose value equals the table value.  Entries with no exact match
    (possible only with non-dyadic weights) keep the recurrence's witness.
    """
    n, m = graph.n, graph.m
    lo, hi, w = graph.eu, graph.ev, graph.ew
    is_beer = graph.is_beer
    faces = ft.faces
    tri_sum = faces.sum(axis=1)

    # edge (lo, hi): [lo bit0, hi bit1, c1 bit0, c1 bit1, c2 bit0, c2 bit1], c1 < c2
    opp = np.full((m, 2), -1, dtype=np.int64)
    for k, side in enumerate((ft.under, ft.over)):
        ok = side >= 0
        opp[ok, k] = tri_sum[side[ok]] - lo[ok] - hi[ok]
    opp.sort(axis=1)
    cand = np.full((m, 6), INF)
    code = np.full((m, 6), NIL, dtype=np.int64)
    cand[:, 0] = vertex_beer[lo] + w
    code[:, 0] = 2 * lo
    cand[:, 1] = w + vertex_beer[hi]
    code[:, 1] = 2 * hi + 1
    for k in range(2):
        c = opp[:, k]
        ok = np.flatnonzero(c >= 0)
        e_lc = edge_ids(graph, lo[ok], c[ok])
        e_ch = edge_ids(graph, c[ok], hi[ok])
        cand[ok, 2 + 2 * k] = edge_beer[e_lc] + w[e_ch]
        cand[ok, 3 + 2 * k] = w[e_lc] + edge_beer[e_ch]
        code[ok, 2 + 2 * k] = 2 * c[ok]
        code[ok, 3 + 2 * k] = 2 * c[ok] + 1
    hit = cand == edge_beer[:, None]
    first = hit.argmax(axis=1)
    fix = hit.any(axis=1) & np.isfinite(edge_beer) & ~(is_beer[lo] | is_beer[hi])
    edge_wit = edge_wit.copy()
    edge_wit[fix] = code[fix, first[fix]]

    # vertex v: beer walk v -> x then edge x -> v, neighbours x ascending
    indptr, dst, eid = graph.csr()
    src = np.repeat(np.arange(n), np.diff(indptr))
    order = np.lexsort((dst, src))
    src, dst, eid = src[order], dst[order], eid[order]
    match = np.flatnonzero(edge_beer[eid] + w[eid] == vertex_beer[src])
    v_hit, first = np.unique(src[match], return_index=True)
    keep = ~is_beer[v_hit] & np.isfinite(vertex_beer[v_hit])
    vertex_wit = vertex_wit.copy()
    vertex_wit[v_hit[keep]] = 2 * dst[match[first[keep]]]
    return edge_wit, vertex_wit
