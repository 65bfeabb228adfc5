"""Turn any outerplanar beer graph into a maximal one satisfying the
generalized triangle inequality, keeping enough provenance to map every
edge of the result back to a walk in the input graph.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .dual import DualTree, face_tree, triangle_faces
from .exceptions import NotAnEdgeError, TooSmallError
from .graph import INF, BeerGraph, PathInG, require_valid


def _already_maximal(graph: BeerGraph) -> bool:
    n = graph.n
    if graph.m != 2 * n - 3:
        return False
    i = np.arange(n - 1)
    hull = np.concatenate([i * n + i + 1, [n - 1]])
    return bool(np.isin(hull, graph.eu * n + graph.ev).all())


def maximalize(graph: BeerGraph) -> tuple[BeerGraph, np.ndarray]:
    """Triangulate ``graph``; returns the maximal graph and a mask of added edges.

    Missing hull edges are added first.  Every remaining non-triangular
    face lies under a unique longest edge ``(a, b)``; walking from ``a``
    towards ``b`` along largest neighbours recovers its boundary, which is
    then fanned out from ``a`` (the face's smallest vertex).  Added edges
    get weight ``+inf``.
    """
    require_valid(graph)
    n = graph.n
    if n < 3:
        raise TooSmallError(f"need at least 3 vertices, got {n}")
    if _already_maximal(graph):
        return graph, np.zeros(graph.m, dtype=bool)
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in zip(graph.eu.tolist(), graph.ev.tolist()):
        adj[a].append(b)
        adj[b].append(a)
    extra: list[tuple[int, int]] = []
    hull = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    for a, b in hull:
        if b not in adj[a]:
            adj[a].append(b)
            adj[b].append(a)
            extra.append((a, b))
    for row in adj:
        row.sort()
    chords = sorted((a, b) for a in range(n) for b in adj[a] if b > a + 1)
    for a, b in chords:
        row = adj[a]
        x = row[bisect_left(row, b) - 1]
        boundary = [a, x]
        while x != b:
            row = adj[x]
            x = row[bisect_right(row, b) - 1]
            boundary.append(x)
        # fan edges close triangles under (a, b) only, so later walks
        # (which stay inside other faces) never need to see them
        for y in boundary[2:-1]:
            extra.append((a, y))
    if not extra:
        return graph, np.zeros(graph.m, dtype=bool)
    ex = np.asarray(extra, dtype=np.int64)
    eu = np.concatenate([graph.eu, ex[:, 0]])
    ev = np.concatenate([graph.ev, ex[:, 1]])
    ew = np.concatenate([graph.ew, np.full(len(ex), INF)])
    tag = np.concatenate([np.zeros(graph.m, dtype=bool), np.ones(len(ex), dtype=bool)])
    out = BeerGraph.from_arrays(n, eu, ev, ew, graph.beer_array)
    order = np.lexsort((ev, eu))
    return out, tag[order]


def enforce_gti(graph: BeerGraph, dual: DualTree | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Shortest-path weights for every edge of a maximal graph.

    Returns ``(delta, parent)`` indexed by edge id; ``parent[e]`` is the
    vertex a strict relaxation went through, or -1.  One post-order pass
    makes each edge exact for the part of the graph below it, a pass over
    the root face closes the root triangle, and a pre-order pass pushes
    exact values back down.
    """
    if dual is None:
        ft = triangle_faces(graph)
        tree, pedge = face_tree(ft, 0)
        order = tree.order.tolist()
        root = tree.root
    else:
        ft, pedge, order, root = dual.ft, dual.parent_edge, dual.tree.order.tolist(), dual.root
    delta = graph.ew.tolist()
    par = [-1] * graph.m
    faces = ft.faces.tolist()
    fedges = ft.edges.tolist()
    pe = pedge.tolist()
    eu = graph.eu.tolist()
    ev = graph.ev.tolist()

    def split(f):
        """Parent edge, the two other edges, and the vertex opposite the parent edge."""
        e0 = pe[f]
        a, c, b = faces[f]
        e_ac, e_cb, e_ab = fedges[f]
        if e0 == e_ab:
            return e0, e_ac, e_cb, c
        if e0 == e_ac:
            return e0, e_ab, e_cb, b
        return e0, e_ac, e_ab, a

    def relax(e, x, y, w):
        # x, y are the two edges from the endpoints of e to w
        s = delta[x] + delta[y]
        if delta[e] > s:
            delta[e] = s
            par[e] = w

    for f in reversed(order):
        if f == root:
            continue
        e0, x, y, w = split(f)
        relax(e0, x, y, w)
    a, c, b = faces[root]
    e_ac, e_cb, e_ab = fedges[root]
    relax(e_ac, e_ab, e_cb, b)
    relax(e_ab, e_ac, e_cb, c)
    relax(e_cb, e_ac, e_ab, a)
    for f in order:
        if f == root:
            continue
        e0, x, y, w = split(f)
        # x joins w to one endpoint of the parent edge, y to the other
        u0, v0 = eu[e0], ev[e0]
        far_x = v0 if u0 in (eu[x], ev[x]) else u0
        relax(x, e0, y, far_x)
        far_y = v0 if u0 in (eu[y], ev[y]) else u0
        relax(y, e0, x, far_y)
    return np.asarray(delta), np.asarray(par, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class NormalizedGraph:
    """Maximal GTI graph plus provenance back to the input graph.

    ``added[e]`` marks edges absent from the input; ``gti_parent[e]`` is the
    vertex whose two edges realise edge ``e``'s weight, or -1 when the
    original edge itself is shortest.
    """

    graph: BeerGraph
    added: np.ndarray
    gti_parent: np.ndarray
    original: BeerGraph

    @property
    def added_edges(self) -> list[tuple[int, int]]:
        idx = np.flatnonzero(self.added)
        return list(zip(self.graph.eu[idx].tolist(), self.graph.ev[idx].tolist()))

    @property
    def parent_map(self) -> dict[tuple[int, int], int]:
        idx = np.flatnonzero(self.gti_parent >= 0)
        return {(int(self.graph.eu[e]), int(self.graph.ev[e])): int(self.gti_parent[e]) for e in idx}

    def expand_into(self, u: int, v: int, out: list) -> None:
        """Append the input-graph walk for edge ``(u, v)`` to ``out``, without ``u``."""
        g = self.graph
        gp = self.gti_parent
        stack = [(u, v)]
        while stack:
            a, b = stack.pop()
            w = int(gp[g.edge_id(a, b)])
            if w < 0:
                out.append(b)
            else:
                stack.append((w, b))
                stack.append((a, w))

    @cached_property
    def is_identity(self) -> bool:
        """True when every edge of the normalized graph is an input edge of unchanged weight."""
        return not self.added.any() and bool((self.gti_parent < 0).all())

    def expand_walk(self, vertices) -> list:
        """Translate a walk of the normalized graph into one of the input graph."""
        vertices = list(vertices)
        if self.is_identity:
            return vertices
        out = vertices[:1]
        for a, b in zip(vertices, vertices[1:]):
            self.expand_into(a, b, out)
        return out


def expand_edge(norm: NormalizedGraph, u: int, v: int) -> PathInG:
    if not norm.graph.has_edge(u, v):
        raise NotAnEdgeError(f"({u},{v}) is not an edge of the normalized graph")
    verts = [u]
    norm.expand_into(u, v, verts)
    total = 0.0
    orig = norm.original
    for a, b in zip(verts, verts[1:]):
        total += orig.weight(a, b)
    store = next((i for i, x in enumerate(verts) if orig.is_beer[x]), None)
    return PathInG(tuple(verts), total, store)


def normalize(graph: BeerGraph) -> NormalizedGraph:
    maximal, added = maximalize(graph)
    delta, parent = enforce_gti(maximal)
    return NormalizedGraph(maximal.with_weights(delta), added, parent, graph)
