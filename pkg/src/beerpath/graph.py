"""Embedded outerplanar beer graphs.

The embedding is carried entirely by the vertex numbering: vertices
``0..n-1`` appear in clockwise order around the outer face.  With that
convention an edge set is outerplanar exactly when no two edges cross as
chords of the circle, which makes validation a pure integer check.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .exceptions import DimensionMismatchError, GraphFormatError, InvalidGraphError, NotAnEdgeError

INF = math.inf

#: Relative tolerance used whenever two independently computed weights are compared.
RTOL = 1e-9


def weights_close(a: float, b: float, rtol: float = RTOL) -> bool:
    if a == b:
        return True
    if math.isinf(a) or math.isinf(b):
        return False
    return abs(a - b) <= rtol * max(1.0, abs(a), abs(b))


class BeerGraph:
    """Immutable undirected graph with positive edge weights and beer stores.

    Edges are stored canonically with ``u < v`` and sorted, so two graphs
    built from the same edge set compare equal regardless of input order.
    Weights may be ``math.inf`` (used for edges added during
    maximalization); input files can only carry finite weights.
    """

    __slots__ = ("n", "eu", "ev", "ew", "_beer", "_is_beer", "_index", "_csr", "_stride")

    def __init__(self, n: int, edges: Iterable[Sequence] = (), beer: Iterable[int] = ()):
        edges = list(edges)
        if edges:
            arr = np.asarray([(int(e[0]), int(e[1])) for e in edges], dtype=np.int64)
            w = np.asarray([float(e[2]) for e in edges], dtype=np.float64)
            u, v = arr[:, 0], arr[:, 1]
        else:
            u = v = np.zeros(0, dtype=np.int64)
            w = np.zeros(0, dtype=np.float64)
        self._setup(int(n), u, v, w, beer)

    @classmethod
    def from_arrays(cls, n: int, u, v, w, beer=()) -> "BeerGraph":
        g = cls.__new__(cls)
        g._setup(int(n), np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64),
                 np.asarray(w, dtype=np.float64), beer)
        return g

    def _setup(self, n, u, v, w, beer):
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        order = np.lexsort((hi, lo))
        self.n = n
        self._stride = max(n, 1)
        self.eu = lo[order]
        self.ev = hi[order]
        self.ew = w[order].copy()
        for a in (self.eu, self.ev, self.ew):
            a.setflags(write=False)
        beer = np.unique(np.asarray(list(beer) if not isinstance(beer, np.ndarray) else beer,
                                    dtype=np.int64))
        beer.setflags(write=False)
        self._beer = beer
        self._is_beer = None
        self._index = None
        self._csr = None

    # -- basic accessors -------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.eu)

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return list(zip(self.eu.tolist(), self.ev.tolist(), self.ew.tolist()))

    @property
    def beer(self) -> frozenset:
        return frozenset(self._beer.tolist())

    @property
    def beer_array(self) -> np.ndarray:
        return self._beer

    @property
    def is_beer(self) -> np.ndarray:
        if self._is_beer is None:
            mask = np.zeros(self.n, dtype=bool)
            ok = self._beer[(self._beer >= 0) & (self._beer < self.n)]
            mask[ok] = True
            mask.setflags(write=False)
            self._is_beer = mask
        return self._is_beer

    def _edge_index(self) -> dict:
        if self._index is None:
            keys = (self.eu * self._stride + self.ev).tolist()
            self._index = dict(zip(keys, range(len(keys))))
        return self._index

    def edge_id(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        try:
            return (self._index or self._edge_index())[u * self._stride + v]
        except KeyError:
            raise NotAnEdgeError(f"({u},{v}) is not an edge") from None

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u * self._stride + v) in (self._index or self._edge_index())

    def weight(self, u: int, v: int) -> float:
        return float(self.ew[self.edge_id(u, v)])

    def csr(self):
        """Sorted adjacency as ``(indptr, neighbours, edge_ids)``."""
        if self._csr is None:
            src = np.concatenate([self.eu, self.ev])
            dst = np.concatenate([self.ev, self.eu])
            eid = np.concatenate([np.arange(self.m), np.arange(self.m)])
            order = np.lexsort((dst, src))
            src, dst, eid = src[order], dst[order], eid[order]
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.add.at(indptr, src + 1, 1)
            np.cumsum(indptr, out=indptr)
            self._csr = (indptr, dst, eid)
        return self._csr

    def neighbors(self, v: int) -> np.ndarray:
        indptr, dst, _ = self.csr()
        return dst[indptr[v]:indptr[v + 1]]

    def degree(self) -> np.ndarray:
        indptr = self.csr()[0]
        return np.diff(indptr)

    def with_weights(self, w) -> "BeerGraph":
        return BeerGraph.from_arrays(self.n, self.eu, self.ev, w, self._beer)

    def with_beer(self, beer) -> "BeerGraph":
        return BeerGraph.from_arrays(self.n, self.eu, self.ev, self.ew, beer)

    # -- equality ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, BeerGraph):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self.eu, other.eu)
                and np.array_equal(self.ev, other.ev) and np.array_equal(self.ew, other.ew)
                and np.array_equal(self._beer, other._beer))

    def __hash__(self):
        return hash((self.n, self.eu.tobytes(), self.ev.tobytes(), self.ew.tobytes(),
                     self._beer.tobytes()))

    def __repr__(self):
        return f"BeerGraph(n={self.n}, m={self.m}, beer={sorted(self.beer)})"


@dataclass(frozen=True)
class PathInG:
    """A walk given by its vertex sequence.

    ``store`` is the position in ``vertices`` of a visited beer store, when
    the walk is a beer path.
    """

    vertices: tuple
    weight: float
    store: Optional[int] = field(default=None, compare=False)

    def __len__(self):
        return len(self.vertices)


def make_path(graph: BeerGraph, vertices: Sequence[int]) -> PathInG:
    """Build a :class:`PathInG`, summing edge weights left to right."""
    vertices = tuple(int(x) for x in vertices)
    if not vertices:
        raise ValueError("a path needs at least one vertex")
    total = 0.0
    ew = graph.ew
    for a, b in zip(vertices, vertices[1:]):
        total += float(ew[graph.edge_id(a, b)])
    is_beer = graph.is_beer
    store = next((i for i, x in enumerate(vertices) if is_beer[x]), None)
    return PathInG(vertices, total, store)


# -- validation --------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple = ()

    def __bool__(self):
        return self.ok


def _crossings(lo: np.ndarray, hi: np.ndarray, limit: int = 20):
    """Find crossing chord pairs with a laminar-interval sweep."""
    order = np.lexsort((-hi, lo))
    stack: list[tuple[int, int]] = []
    found = []
    for a, b in zip(lo[order].tolist(), hi[order].tolist()):
        while stack and stack[-1][1] <= a:
            stack.pop()
        if stack and b > stack[-1][1] and a > stack[-1][0]:
            found.append((stack[-1], (a, b)))
            if len(found) >= limit:
                break
            continue
        stack.append((a, b))
    return found


def validate(graph: BeerGraph) -> ValidationReport:
    """Check every BeerGraph invariant; violations are returned, not raised."""
    n, lo, hi, w = graph.n, graph.eu, graph.ev, graph.ew
    out = []
    if n < 0:
        return ValidationReport(False, ("negative vertex count",))
    bad = (lo < 0) | (hi >= n)
    for a, b in zip(lo[bad].tolist(), hi[bad].tolist()):
        out.append(f"vertex out of range in edge ({a},{b})")
    loops = lo == hi
    for a in lo[loops].tolist():
        out.append(f"self-loop at {a}")
    if len(lo) > 1:
        dup = (lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])
        for a, b in zip(lo[1:][dup].tolist(), hi[1:][dup].tolist()):
            out.append(f"parallel edges ({a},{b})")
    nonpos = ~(w > 0)
    for a, b in zip(lo[nonpos].tolist(), hi[nonpos].tolist()):
        out.append(f"non-positive weight on edge ({a},{b})")
    beer = graph.beer_array
    for x in beer[(beer < 0) | (beer >= n)].tolist():
        out.append(f"beer store {x} out of range")
    if n >= 2 and len(lo) > max(2 * n - 3, 1):
        out.append(f"too many edges: {len(lo)} > 2n-3 = {2 * n - 3}")
    if out:
        return ValidationReport(False, tuple(out))
    if n > 1 and not _connected(n, lo, hi):
        out.append("disconnected")
    for (a, b), (c, d) in _crossings(lo, hi):
        out.append(f"crossing chords ({a},{b}),({c},{d})")
    return ValidationReport(not out, tuple(out))


def _connected(n: int, lo: np.ndarray, hi: np.ndarray) -> bool:
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    mat = coo_matrix((np.ones(len(lo)), (lo, hi)), shape=(n, n))
    count, _ = connected_components(mat, directed=False)
    return count == 1


def require_valid(graph: BeerGraph) -> None:
    report = validate(graph)
    if not report.ok:
        raise InvalidGraphError(report.violations)


def is_maximal(graph: BeerGraph) -> bool:
    require_valid(graph)
    n = graph.n
    if n < 3:
        return graph.m == max(2 * n - 3, 0)
    if graph.m != 2 * n - 3:
        return False
    nxt = np.arange(n - 1)
    hull = np.concatenate([nxt * n + nxt + 1, [n - 1]])
    keys = graph.eu * n + graph.ev
    return bool(np.isin(hull, keys).all())


def satisfies_gti(graph: BeerGraph, all_pairs_dist) -> bool:
    """True iff every edge is a shortest path between its endpoints."""
    table = np.asarray(all_pairs_dist, dtype=np.float64)
    if table.shape != (graph.n, graph.n):
        raise DimensionMismatchError(f"distance table has shape {table.shape}, "
                                     f"expected ({graph.n}, {graph.n})")
    for a, b, w in graph.edges:
        if not weights_close(float(table[a, b]), w):
            return False
    return True


# -- file format ---------------------------------------------------------------

_KEYS = {"n", "edges", "beer"}


def _format_weight(w: float) -> str:
    return repr(float(w))


def dumps_graph(graph: BeerGraph) -> str:
    """Serialise to the one-line JSON graph format."""
    if not np.isfinite(graph.ew).all():
        raise GraphFormatError("infinite weights are not expressible in graph files")
    edges = ",".join(f"[{a},{b},{_format_weight(w)}]" for a, b, w in graph.edges)
    beer = ",".join(str(x) for x in graph.beer_array.tolist())
    return f'{{"n": {graph.n}, "edges": [{edges}], "beer": [{beer}]}}'


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def loads_graph(text: str) -> BeerGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise GraphFormatError("graph file must hold one JSON object")
    unknown = set(obj) - _KEYS
    if unknown:
        raise GraphFormatError(f"unknown keys: {sorted(unknown)}")
    missing = _KEYS - set(obj)
    if missing:
        raise GraphFormatError(f"missing keys: {sorted(missing)}")
    n = obj["n"]
    if not _is_int(n) or n < 0:
        raise GraphFormatError("n must be a non-negative integer")
    edges = []
    for e in obj["edges"]:
        if not (isinstance(e, list) and len(e) == 3 and _is_int(e[0]) and _is_int(e[1])):
            raise GraphFormatError(f"malformed edge {e!r}")
        w = e[2]
        if isinstance(w, bool) or not isinstance(w, (int, float)):
            raise GraphFormatError(f"malformed weight in edge {e!r}")
        w = float(w)
        if not math.isfinite(w) or w <= 0:
            raise GraphFormatError(f"weight must be finite and positive in edge {e!r}")
        if not (0 <= e[0] < n and 0 <= e[1] < n):
            raise GraphFormatError(f"vertex out of range in edge {e!r}")
        edges.append((e[0], e[1], w))
    beer = obj["beer"]
    if not isinstance(beer, list) or not all(_is_int(x) and 0 <= x < n for x in beer):
        raise GraphFormatError("beer must be a list of vertex ids")
    return BeerGraph(n, edges, beer)


def read_graph(path) -> BeerGraph:
    with open(path, encoding="utf-8") as fh:
        return loads_graph(fh.read())


def write_graph(graph: BeerGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_graph(graph))
        fh.write("\n")


# -- reference fixtures ----------------------------------------------------------

#: Unit triangle with a store at vertex 2.
FIX_T3 = BeerGraph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)], [2])

#: Unit square with chord (0,2) and a store at vertex 3.
FIX_F4 = BeerGraph(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0), (0, 2, 1.0)], [3])

#: Unit hexagon fanned from vertex 0, store at vertex 5.
FIX_H6 = BeerGraph(
    6,
    [(i, (i + 1) % 6, 1.0) for i in range(6)] + [(0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0)],
    [5],
)
