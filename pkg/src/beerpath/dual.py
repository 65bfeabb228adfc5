"""Weak dual of a maximal outerplanar graph, face paths, and vertex chains.

In a maximal outerplanar graph numbered clockwise around the hull, every
edge ``(a, b)`` with ``b - a >= 2`` is the longest side of exactly one
triangle lying "under" it (all of whose vertices are in ``[a, b]``); its
third vertex is the largest neighbour of ``a`` below ``b``.  That gives all
``n - 2`` faces with one vectorised pass over the sorted adjacency.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order

from .exceptions import NotOnChainError, TooSmallError
from .graph import BeerGraph
from .tree import ColourPathSet, RmqIndex, RootedTree, TreeIndex


def edge_ids(graph: BeerGraph, a, b) -> np.ndarray:
    """Vectorised edge lookup; every pair must be an edge."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    keys = graph.eu * graph.n + graph.ev
    want = lo * graph.n + hi
    idx = np.searchsorted(keys, want)
    idx = np.minimum(idx, len(keys) - 1)
    if len(want) and not (keys[idx] == want).all():
        raise ValueError("pair is not an edge")
    return idx


@dataclass(frozen=True)
class FaceTable:
    """Faces of a maximal outerplanar graph with their edge incidences.

    ``faces[f]`` is the sorted vertex triple ``(a, c, b)``; ``edges[f]``
    holds the edge ids of ``(a, c)``, ``(c, b)``, ``(a, b)``.  For every
    graph edge, ``under`` is the face below it (or -1 for hull edges
    ``(i, i+1)``) and ``over`` the face above it (or -1 for ``(0, n-1)``).
    """

    faces: np.ndarray
    edges: np.ndarray
    under: np.ndarray
    over: np.ndarray


def triangle_faces(graph: BeerGraph) -> FaceTable:
    n = graph.n
    if n < 3:
        raise TooSmallError("a maximal outerplanar graph needs at least 3 vertices")
    indptr, dst, eid = graph.csr()
    src = np.repeat(np.arange(n), np.diff(indptr))
    q = np.flatnonzero(dst > src + 1)
    a, b = src[q], dst[q]
    c = dst[q - 1]
    order = np.lexsort((b, c, a))
    a, c, b = a[order], c[order], b[order]
    faces = np.stack([a, c, b], axis=1)
    nf = len(faces)
    if nf != n - 2:
        raise ValueError(f"expected {n - 2} faces, found {nf}; graph is not maximal")
    e_ac = edge_ids(graph, a, c)
    e_cb = edge_ids(graph, c, b)
    e_ab = eid[q][order]
    m = graph.m
    under = np.full(m, -1, dtype=np.int64)
    over = np.full(m, -1, dtype=np.int64)
    fid = np.arange(nf)
    under[e_ab] = fid
    over[e_ac] = fid
    over[e_cb] = fid
    return FaceTable(faces, np.stack([e_ac, e_cb, e_ab], axis=1), under, over)


def lookup_face(graph: BeerGraph, ft: FaceTable, triple) -> int:
    """Face id of a vertex triple; ``KeyError`` if it is not a face."""
    a, c, b = sorted(int(x) for x in triple)
    if 0 <= a and b < graph.n and graph.has_edge(a, b):
        f = int(ft.under[graph.edge_id(a, b)])
        if f >= 0 and int(ft.faces[f, 1]) == c:
            return f
    raise KeyError(f"({a},{c},{b}) is not a face")


def face_tree(ft: FaceTable, root: int) -> tuple[RootedTree, np.ndarray]:
    """Root the dual at face ``root``; returns the tree and each face's parent edge."""
    nf = len(ft.faces)
    # dual edges: each graph edge with faces on both sides
    both = np.flatnonzero((ft.under >= 0) & (ft.over >= 0))
    x, y = ft.under[both], ft.over[both]
    mat = csr_matrix((np.ones(2 * len(x), dtype=np.int8),
                      (np.concatenate([x, y]), np.concatenate([y, x]))), shape=(nf, nf))
    order, pred = breadth_first_order(mat, root, directed=False, return_predecessors=True)
    if len(order) != nf:
        raise ValueError("dual graph is disconnected")
    parent = pred.astype(np.int64)
    parent[root] = -1
    tree = RootedTree(parent)
    # the shared edge is the child's top edge when the parent lies above it,
    # otherwise the parent's top edge
    top = ft.edges[:, 2]
    pe = np.full(nf, -1, dtype=np.int64)
    kids = np.flatnonzero(parent >= 0)
    above = ft.over[top[kids]] == parent[kids]
    pe[kids] = np.where(above, top[kids], top[parent[kids]])
    return tree, pe


class DualTree:
    """Rooted weak dual with tree indices, face paths and parent edges."""

    def __init__(self, graph: BeerGraph, root_face: Optional[int] = None,
                 faces: Optional[FaceTable] = None):
        self.graph = graph
        self.ft = faces if faces is not None else triangle_faces(graph)
        self.faces = self.ft.faces
        nf = len(self.faces)
        if root_face is None:
            root_face = 0
        if not 0 <= root_face < nf:
            raise ValueError(f"root face {root_face} out of range")
        self.root = int(root_face)
        self.tree, self.parent_edge = face_tree(self.ft, self.root)
        self.index = TreeIndex(self.tree)
        n = graph.n
        v = np.arange(n)
        hull_next = edge_ids(graph, v, (v + 1) % n)
        hull_prev = edge_ids(graph, (v - 1) % n, v)
        self.end_cw = self._hull_face(hull_next)
        self.end_ccw = self._hull_face(hull_prev)
        self.face_of = np.minimum(self.end_cw, self.end_ccw)
        self.colours = ColourPathSet(self.index, np.stack([self.end_cw, self.end_ccw], axis=1))
        self._faces_list = self.faces.tolist()
        self._face_of = self.face_of.tolist()

    def _hull_face(self, e):
        f = self.ft.over[e]
        return np.where(f >= 0, f, self.ft.under[e])

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def face_vertices(self, f: int) -> tuple:
        return tuple(self._faces_list[f])

    def face_id(self, triple) -> int:
        return lookup_face(self.graph, self.ft, triple)

    def contains(self, f: int, v: int) -> bool:
        return v in self._faces_list[f]

    def on_face_path(self, v: int, f: int) -> bool:
        """True iff face ``f`` contains vertex ``v`` (i.e. ``f`` lies on ``P_v``)."""
        return v in self._faces_list[f]

    def shared_edge(self, f: int, g: int) -> tuple[int, int]:
        """Sorted endpoints of the edge shared by adjacent faces ``f`` and ``g``."""
        par = self.index._par
        if par[f] == g:
            e = int(self.parent_edge[f])
        elif par[g] == f:
            e = int(self.parent_edge[g])
        else:
            raise ValueError(f"faces {f} and {g} are not adjacent")
        return int(self.graph.eu[e]), int(self.graph.ev[e])

    def dual_edges(self) -> list[tuple[int, int, tuple[int, int]]]:
        out = []
        for f in range(self.n_faces):
            p = int(self.tree.parent[f])
            if p >= 0:
                e = int(self.parent_edge[f])
                a, b = sorted((p, f))
                out.append((a, b, (int(self.graph.eu[e]), int(self.graph.ev[e]))))
        return sorted(out)


def build_dual(norm_or_graph, root_face=None) -> DualTree:
    """Build the dual of a normalized graph (or of a maximal BeerGraph).

    ``root_face`` may be a face id or a vertex triple.
    """
    graph = getattr(norm_or_graph, "graph", norm_or_graph)
    if root_face is not None and not isinstance(root_face, (int, np.integer)):
        ft = triangle_faces(graph)
        return DualTree(graph, lookup_face(graph, ft, root_face), ft)
    return DualTree(graph, root_face)


def face_of(dual: DualTree, v: int) -> tuple:
    return dual.face_vertices(dual._face_of[v])


class Chains:
    """All vertex chains stored back to back.

    The chain of ``v`` lists its neighbours clockwise starting after ``v``:
    neighbours larger than ``v`` ascending, then smaller ones ascending.
    Consecutive entries are adjacent, so the chain is the hull of the fan
    formed by the faces around ``v``.
    """

    def __init__(self, graph: BeerGraph, beer_edge=None):
        n = graph.n
        indptr, dst, eid = graph.csr()
        src = np.repeat(np.arange(n), np.diff(indptr))
        # rotate each row so neighbours greater than the owner come first
        rank = np.where(dst > src, 0, 1)
        order = np.lexsort((dst, rank, src))
        self.graph = graph
        self.start = indptr
        self.verts = dst[order]
        self.spoke = eid[order]
        seg_len = np.diff(indptr)
        self.max_len = int(seg_len.max()) if n else 0
        same = np.ones(len(self.verts), dtype=bool)
        same[indptr[1:] - 1] = False
        nxt = np.flatnonzero(same)
        link = np.full(len(self.verts), -1, dtype=np.int64)
        link[nxt] = edge_ids(graph, self.verts[nxt], self.verts[nxt + 1])
        self.link = link
        step = np.where(link >= 0, graph.ew[np.maximum(link, 0)], 0.0)
        run = np.concatenate([[0.0], np.cumsum(step)])
        self.prefix = run[:-1] - np.repeat(run[indptr[:-1]], seg_len)
        self._verts_l = self.verts.tolist()
        self._prefix_l = self.prefix.tolist()
        self._start_l = indptr.tolist()
        higher = np.bincount(src[dst > src], minlength=n)
        self._split_l = (indptr[:-1] + higher).tolist()
        self.detour = None
        self.rmq = None
        if beer_edge is not None:
            self.attach_detours(beer_edge)

    def attach_detours(self, beer_edge):
        """Fill ``A`` with beer surcharges of chain links and build the RMQ."""
        link = self.link
        ok = link >= 0
        a = np.full(len(link), np.inf)
        a[ok] = beer_edge[link[ok]] - self.graph.ew[link[ok]]
        self.detour = a
        self.rmq = RmqIndex(a, max_span=max(self.max_len - 1, 1))

    def chain(self, v: int) -> tuple:
        return tuple(self._verts_l[self._start_l[v]:self._start_l[v + 1]])

    def prefix_weights(self, v: int) -> tuple:
        return tuple(self._prefix_l[self._start_l[v]:self._start_l[v + 1]])

    def position(self, v: int, u: int) -> int:
        """Flat index of ``u`` within the chain of ``v``."""
        s, mid, e = self._start_l[v], self._split_l[v], self._start_l[v + 1]
        lo, hi = (s, mid) if u > v else (mid, e)
        i = bisect_left(self._verts_l, u, lo, hi)
        if i >= hi or self._verts_l[i] != u:
            raise NotOnChainError(f"{u} is not on the chain of {v}")
        return i

    def chain_dist(self, v: int, u: int, w: int) -> float:
        i, j = self.position(v, u), self.position(v, w)
        return abs(self._prefix_l[i] - self._prefix_l[j])


def build_chains(dual: DualTree, beer_base=None) -> Chains:
    beer_edge = None if beer_base is None else beer_base.edge_beer
    return Chains(dual.graph, beer_edge)


def chain_dist(chains: Chains, v: int, u: int, w: int) -> float:
    return chains.chain_dist(v, u, w)
