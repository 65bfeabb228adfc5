"""Distance and beer-distance queries between arbitrary vertex pairs.

For two faces ``F != F'`` the summary ``Q[F, F']`` holds, for every vertex
``u`` of ``F`` and ``v`` of ``F'``, both ``dist(u, v)`` and
``dist_B(u, v)``: 18 numbers.  Any walk between the two faces crosses
every face on the dual path between them, so summaries compose along
dual paths, and a query becomes an ordered path sum over the dual tree.

Summaries are stored as arrays of shape ``(2, 3, 3)``: layer 0 holds
distances, layer 1 beer distances; rows follow the sorted vertices of the
source face, columns those of the target face.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .beerbase import BeerBaseTables
from .dual import DualTree
from .exceptions import IncompatibleFacesError
from .graph import INF
from .tree import PathSumIndex, Semigroup

_CHUNK = 1 << 16


class FacePairSemigroup(Semigroup):
    """Min-plus composition of face-pair summaries, vectorised over axis 0."""

    antihomomorphic = True

    def combine(self, a, b):
        if len(a) <= _CHUNK:
            return _compose(a, b)
        out = np.empty_like(a)
        for s in range(0, len(a), _CHUNK):
            out[s:s + _CHUNK] = _compose(a[s:s + _CHUNK], b[s:s + _CHUNK])
        return out

    def flip(self, a):
        return np.swapaxes(a, -1, -2)


def _compose(a, b):
    ad, ab = a[:, 0], a[:, 1]
    bd, bb = b[:, 0], b[:, 1]
    out = np.empty(a.shape)
    d = ad[:, :, 0, None] + bd[:, None, 0, :]
    x = np.minimum(ab[:, :, 0, None] + bd[:, None, 0, :], ad[:, :, 0, None] + bb[:, None, 0, :])
    for k in (1, 2):
        np.minimum(d, ad[:, :, k, None] + bd[:, None, k, :], out=d)
        np.minimum(x, ab[:, :, k, None] + bd[:, None, k, :], out=x)
        np.minimum(x, ad[:, :, k, None] + bb[:, None, k, :], out=x)
    out[:, 0] = d
    out[:, 1] = x
    return out


_SG = FacePairSemigroup()


@dataclass(frozen=True)
class FacePairSummary:
    """Distances and beer distances from the vertices of one face to another's."""

    source: int
    target: int
    source_vertices: tuple
    target_vertices: tuple
    table: np.ndarray

    def __post_init__(self):
        if self.source == self.target:
            raise IncompatibleFacesError("a summary needs two distinct faces")

    @property
    def size(self) -> int:
        return int(self.table.size)

    def dist(self, u: int, v: int) -> float:
        return float(self.table[0, self.source_vertices.index(u), self.target_vertices.index(v)])

    def beer_dist(self, u: int, v: int) -> float:
        return float(self.table[1, self.source_vertices.index(u), self.target_vertices.index(v)])

    def reversed(self) -> "FacePairSummary":
        return FacePairSummary(self.target, self.source, self.target_vertices,
                               self.source_vertices, np.swapaxes(self.table, -1, -2).copy())

    def __eq__(self, other):
        if not isinstance(other, FacePairSummary):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and np.array_equal(self.table, other.table))


def combine(q1: FacePairSummary, q2: FacePairSummary, dual: DualTree | None = None) -> FacePairSummary:
    """Compose ``Q[F, F']`` with ``Q[F', F'']`` into ``Q[F, F'']``.

    Equal summaries combine to themselves.  Any other pairing that does not
    meet at a shared middle face on the dual path raises
    :class:`IncompatibleFacesError`; the path check needs ``dual``.
    """
    if q1.source == q2.source and q1.target == q2.target:
        return q1
    if q1.target != q2.source or q1.source == q2.target:
        raise IncompatibleFacesError(
            f"cannot combine summaries ({q1.source},{q1.target}) and ({q2.source},{q2.target})")
    if dual is not None and not dual.index.on_path(q1.source, q2.target, q1.target):
        raise IncompatibleFacesError(f"face {q1.target} is not between {q1.source} and {q2.target}")
    table = _compose(q1.table[None], q2.table[None])[0]
    return FacePairSummary(q1.source, q2.target, q1.source_vertices, q2.target_vertices, table)


def _lookup(keys: np.ndarray, n: int, a: np.ndarray, b: np.ndarray):
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    want = lo * n + hi
    idx = np.minimum(np.searchsorted(keys, want), len(keys) - 1)
    return keys[idx] == want, idx


def base_summaries(dual: DualTree, tables: BeerBaseTables, src: np.ndarray, dst: np.ndarray,
                   shared: np.ndarray) -> np.ndarray:
    """Summaries for many adjacent face pairs at once.

    ``shared[i]`` is the id of the edge both faces contain.  Pairs inside
    one face or joined by an edge read the precomputed tables; the two
    opposite corners go through one of the shared endpoints.
    """
    g = dual.graph
    n = g.n
    keys = g.eu * n + g.ev
    ew, eb, vb = g.ew, tables.edge_beer, tables.vertex_beer
    fs, fd = dual.faces[src], dual.faces[dst]
    w1, w2 = g.eu[shared], g.ev[shared]
    out = np.empty((len(src), 2, 3, 3))
    for i in range(3):
        u = fs[:, i]
        for j in range(3):
            v = fd[:, j]
            same = u == v
            found, e = _lookup(keys, n, u, v)
            d = np.where(found, ew[e], INF)
            b = np.where(found, eb[e], INF)
            far = ~same & ~found
            if far.any():
                uu, vv, a1, a2 = u[far], v[far], w1[far], w2[far]
                _, e1 = _lookup(keys, n, uu, a1)
                _, e2 = _lookup(keys, n, a1, vv)
                _, e3 = _lookup(keys, n, uu, a2)
                _, e4 = _lookup(keys, n, a2, vv)
                d[far] = np.minimum(ew[e1] + ew[e2], ew[e3] + ew[e4])
                b[far] = np.minimum(np.minimum(eb[e1] + ew[e2], ew[e1] + eb[e2]),
                                    np.minimum(eb[e3] + ew[e4], ew[e3] + eb[e4]))
            d[same] = 0.0
            b[same] = vb[u[same]]
            out[:, 0, i, j] = d
            out[:, 1, i, j] = b
    return out


def base_summary(dual: DualTree, tables: BeerBaseTables, f: int, g: int) -> FacePairSummary:
    """``Q[f, g]`` for two faces adjacent in the dual."""
    if not (dual.tree.parent[f] == g or dual.tree.parent[g] == f):
        raise IncompatibleFacesError(f"faces {f} and {g} are not adjacent")
    child = f if dual.tree.parent[f] == g else g
    e = dual.parent_edge[child]
    table = base_summaries(dual, tables, np.asarray([f]), np.asarray([g]), np.asarray([e]))[0]
    return FacePairSummary(f, g, dual.face_vertices(f), dual.face_vertices(g), table)


class BeerDistanceOracle:
    """Answers ``dist`` and ``dist_B`` for any vertex pair."""

    def __init__(self, dual: DualTree, tables: BeerBaseTables):
        self.dual = dual
        self.tables = tables
        self.graph = dual.graph
        nf = dual.n_faces
        parent = dual.tree.parent
        values = np.zeros((nf, 2, 3, 3))
        kids = np.flatnonzero(parent >= 0)
        if len(kids):
            values[kids] = base_summaries(dual, tables, kids, parent[kids], dual.parent_edge[kids])
        self.path_sum = PathSumIndex(dual.index, values, _SG) if nf > 1 else None
        self._keys = self.graph.eu * self.graph.n + self.graph.ev
        # column of each vertex inside its canonical face
        fo = dual.face_of
        self._slot = np.argmax(dual.faces[fo] == np.arange(self.graph.n)[:, None], axis=1)

    @property
    def n_path_sum_edges(self) -> int:
        return self.dual.n_faces - 1

    def summary(self, f: int, g: int) -> FacePairSummary:
        """``Q[f, g]`` for any two distinct faces, by a dual path sum."""
        table = self.path_sum.query(f, g)
        return FacePairSummary(f, g, self.dual.face_vertices(f), self.dual.face_vertices(g),
                               np.array(table))

    def query_many(self, u, v) -> tuple[np.ndarray, np.ndarray]:
        """Vectorised ``(dist, dist_B)`` for paired vertex arrays."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        n = self.graph.n
        if len(u) and (min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n):
            raise IndexError("vertex id out of range")
        d = np.empty(len(u))
        b = np.empty(len(u))
        same = u == v
        d[same] = 0.0
        b[same] = self.tables.vertex_beer[u[same]]
        found, e = _lookup(self._keys, n, u, v) if len(u) else (np.zeros(0, bool), None)
        edge = found & ~same
        if edge.any():
            d[edge] = self.graph.ew[e[edge]]
            b[edge] = self.tables.edge_beer[e[edge]]
        rest = np.flatnonzero(~same & ~found)
        if len(rest):
            fo = self.dual.face_of
            fu, fv = fo[u[rest]], fo[v[rest]]
            q = self.path_sum.query_many(fu, fv)
            i, j = self._slot[u[rest]], self._slot[v[rest]]
            k = np.arange(len(rest))
            d[rest] = q[k, 0, i, j]
            b[rest] = q[k, 1, i, j]
        return d, b

    def query_dist(self, u: int, v: int) -> float:
        return float(self.query_many([u], [v])[0][0])

    def query_beer_dist(self, u: int, v: int) -> float:
        return float(self.query_many([u], [v])[1][0])


def build_oracle(dual: DualTree, tables: BeerBaseTables) -> BeerDistanceOracle:
    return BeerDistanceOracle(dual, tables)


def query_dist(oracle: BeerDistanceOracle, u: int, v: int) -> float:
    return oracle.query_dist(u, v)


def query_beer_dist(oracle: BeerDistanceOracle, u: int, v: int) -> float:
    return oracle.query_beer_dist(u, v)
