"""Ground truth and instance generation.

The oracle is a plain Dijkstra over (vertex, has-visited-a-store) states;
it knows nothing about outerplanarity and is the reference every engine
answer is checked against.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .exceptions import BeerPathError
from .graph import INF, BeerGraph
from .tree import RootedTree, TreeIndex

#: Generated weights are multiples of this, so every path sum is exact.
WEIGHT_QUANTUM = 2.0 ** -20


class InvalidParamsError(BeerPathError):
    pass


class DegenerateTreeError(BeerPathError):
    pass


# -- oracle ----------------------------------------------------------------------

def _adjacency(graph: BeerGraph):
    adj: list[list[tuple[int, float]]] = [[] for _ in range(graph.n)]
    for a, b, w in graph.edges:
        adj[a].append((b, w))
        adj[b].append((a, w))
    return adj


def oracle_beer_sssp(graph: BeerGraph, s: int, adj=None) -> tuple[np.ndarray, np.ndarray]:
    """``(dist, dist_B)`` from ``s`` by Dijkstra over two labels per vertex."""
    n = graph.n
    adj = adj if adj is not None else _adjacency(graph)
    store = graph.is_beer.tolist()
    best = [[INF] * n, [INF] * n]
    start = 1 if store[s] else 0
    best[start][s] = 0.0
    heap = [(0.0, s, start)]
    done = [[False] * n, [False] * n]
    while heap:
        d, v, b = heapq.heappop(heap)
        if done[b][v]:
            continue
        done[b][v] = True
        for x, w in adj[v]:
            nb = 1 if (b or store[x]) else 0
            nd = d + w
            if nd < best[nb][x]:
                best[nb][x] = nd
                heapq.heappush(heap, (nd, x, nb))
    plain = np.minimum(best[0], best[1])
    return plain, np.asarray(best[1])


@dataclass(frozen=True)
class OracleTables:
    dist: np.ndarray
    dist_b: np.ndarray


def oracle_all_pairs(graph: BeerGraph) -> OracleTables:
    adj = _adjacency(graph)
    d = np.empty((graph.n, graph.n))
    db = np.empty((graph.n, graph.n))
    for s in range(graph.n):
        d[s], db[s] = oracle_beer_sssp(graph, s, adj)
    return OracleTables(d, db)


# -- generators ------------------------------------------------------------------

def _check(n: int, frac: float, lo: int = 3):
    if int(n) != n or n < lo:
        raise InvalidParamsError(f"n must be an integer >= {lo}, got {n}")
    if not 0.0 <= frac <= 1.0:
        raise InvalidParamsError(f"beer fraction must be in [0, 1], got {frac}")


def _weights(rng: np.random.Generator, k: int) -> np.ndarray:
    q = int(1 / WEIGHT_QUANTUM)
    return rng.integers(q // 2, 2 * q, size=k, endpoint=True) * WEIGHT_QUANTUM


def _stores(rng: np.random.Generator, n: int, frac: float) -> np.ndarray:
    k = int(round(frac * n))
    return np.sort(rng.choice(n, size=k, replace=False)) if k else np.zeros(0, dtype=np.int64)


def random_triangulation(n: int, rng: np.random.Generator) -> np.ndarray:
    """Edges of a uniformly random triangulation of the convex n-gon.

    A random arrangement of ``n-2`` internal and ``n-1`` leaf tokens is
    rotated by the cycle lemma into the preorder code of a uniform binary
    tree, which maps onto the polygon: the node for edge ``(a, b)`` puts
    its apex at ``a + 1 + (internal nodes in its left subtree)``.
    """
    k = n - 2
    tokens = np.concatenate([np.ones(k, dtype=np.int64), -np.ones(k + 1, dtype=np.int64)])
    rng.shuffle(tokens)
    prefix = np.cumsum(tokens)
    # rotate to start just after the first minimum of the prefix sums
    cut = int(np.argmin(prefix)) + 1
    code = np.concatenate([tokens[cut:], tokens[:cut]]).tolist()
    left_count = [0] * len(code)
    stack: list[int] = []
    for i in range(len(code) - 1, -1, -1):
        if code[i] < 0:
            stack.append(0)
        else:
            left = stack.pop()
            right = stack.pop()
            left_count[i] = left
            stack.append(left + right + 1)
    edges = [(0, n - 1)]
    pending = [(0, n - 1)]
    for i, tok in enumerate(code):
        a, b = pending.pop()
        if tok < 0:
            continue
        c = a + 1 + left_count[i]
        edges.append((a, c))
        edges.append((c, b))
        pending.append((c, b))
        pending.append((a, c))
    return np.asarray(edges, dtype=np.int64)


def _raw_maximal(n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    edges = random_triangulation(n, rng)
    return edges, _weights(rng, len(edges))


def gen_random_maximal(n: int, seed: int, beer_fraction: float = 0.1) -> BeerGraph:
    """Uniform random triangulated n-gon with GTI-repaired weights."""
    from .normalize import normalize

    _check(n, beer_fraction)
    rng = np.random.default_rng(seed)
    edges, w = _raw_maximal(n, rng)
    beer = _stores(rng, n, beer_fraction)
    g = BeerGraph.from_arrays(n, edges[:, 0], edges[:, 1], w, beer)
    return normalize(g).graph


def gen_random_outerplanar(n: int, seed: int, chord_keep_prob: float = 0.5,
                           beer_fraction: float = 0.1, tree: bool = False) -> BeerGraph:
    """Random outerplanar graph: a triangulation with chords thinned out,
    or with ``tree=True`` a random tree numbered in preorder.

    Weights are left as drawn, so the generalized triangle inequality
    usually fails and normalization has work to do.
    """
    _check(n, beer_fraction, lo=1 if tree else 3)
    if not 0.0 <= chord_keep_prob <= 1.0:
        raise InvalidParamsError(f"chord keep probability must be in [0, 1], got {chord_keep_prob}")
    rng = np.random.default_rng(seed)
    if tree:
        edges = _random_tree_edges(n, rng)
        w = _weights(rng, len(edges))
    else:
        edges, w = _raw_maximal(n, rng)
        chord = np.abs(edges[:, 1] - edges[:, 0]) >= 2
        chord &= ~((edges[:, 0] == 0) & (edges[:, 1] == n - 1))
        drop = chord & (rng.random(len(edges)) >= chord_keep_prob)
        edges, w = edges[~drop], w[~drop]
    beer = _stores(rng, n, beer_fraction)
    return BeerGraph.from_arrays(n, edges[:, 0], edges[:, 1], w, beer)


def _random_tree_edges(n: int, rng: np.random.Generator) -> np.ndarray:
    if n == 1:
        return np.zeros((0, 2), dtype=np.int64)
    parent = np.concatenate([[-1], [int(rng.integers(0, i)) for i in range(1, n)]])
    kids: list[list[int]] = [[] for _ in range(n)]
    for v in range(1, n):
        kids[parent[v]].append(v)
    label = [0] * n
    stack = [0]
    nxt = 0
    while stack:
        v = stack.pop()
        label[v] = nxt
        nxt += 1
        stack.extend(reversed(kids[v]))
    return np.asarray([(label[parent[v]], label[v]) for v in range(1, n)], dtype=np.int64)


def gen_path_maximal(n: int, seed: int = 0, beer: tuple = ()) -> BeerGraph:
    """Zigzag triangulated strip whose dual is a path; weights random, GTI-repaired."""
    from .normalize import normalize

    if n < 3:
        raise InvalidParamsError("n must be at least 3")
    rng = np.random.default_rng(seed)
    i = np.arange(n)
    hull = [np.stack([i[:-1], i[:-1] + 1], axis=1), np.asarray([[0, n - 1]])]
    k = np.arange(n)
    a1, b1 = k, n - 2 - k
    a2, b2 = k + 1, n - 2 - k
    c1 = np.stack([a1, b1], axis=1)[b1 - a1 >= 2]
    c2 = np.stack([a2, b2], axis=1)[b2 - a2 >= 2]
    edges = np.concatenate(hull + [c1, c2])
    w = _weights(rng, len(edges))
    g = BeerGraph.from_arrays(n, edges[:, 0], edges[:, 1], w, np.asarray(beer, dtype=np.int64))
    return normalize(g).graph


# -- path-minimum reduction --------------------------------------------------------

@dataclass(frozen=True)
class ReductionInstance:
    """Beer tree built from a valued tree.

    Each tree edge ``e = (child, parent)`` becomes two unit edges through a
    middle vertex ``mid[e]`` with a pendant store ``store[e]`` hanging off
    it at weight ``s(e)``.  Vertices are renumbered in preorder so the beer
    tree is an outerplanar graph under the clockwise convention.
    """

    tree: RootedTree
    index: TreeIndex
    values: np.ndarray
    graph: BeerGraph
    node: np.ndarray
    mid: np.ndarray
    store: np.ndarray


def reduce_path_min(tree: RootedTree, values) -> ReductionInstance:
    n = tree.n
    if n < 2:
        raise DegenerateTreeError("the reduction needs a tree with at least 2 nodes")
    values = np.asarray(values, dtype=np.float64)
    if len(values) != n:
        raise ValueError("need one value per node (the value of its parent edge)")
    kid_vals = np.delete(values, tree.root)
    if not ((kid_vals > 0) & (kid_vals < 1)).all():
        raise ValueError("edge values must lie in (0, 1)")
    # children: original tree children in id order, then the pendant store
    par = tree.parent.tolist()
    kids: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        if par[v] >= 0:
            kids[par[v]].append(v)
    node = [0] * n
    mid = [-1] * n
    store = [-1] * n
    nxt = 0
    stack = [("node", tree.root)]
    edges = []
    while stack:
        kind, v = stack.pop()
        if kind == "node":
            node[v] = nxt
            nxt += 1
            if par[v] >= 0:
                edges.append((mid[v], node[v], 1.0))
            stack.extend(("mid", c) for c in reversed(kids[v]))
        elif kind == "mid":
            mid[v] = nxt
            nxt += 1
            edges.append((node[par[v]], mid[v], 1.0))
            stack.append(("node", v))
            stack.append(("store", v))
        else:
            store[v] = nxt
            nxt += 1
            edges.append((mid[v], store[v], float(values[v])))
    beer = [s for s in store if s >= 0]
    graph = BeerGraph(nxt, edges, beer)
    return ReductionInstance(tree, TreeIndex(tree), values, graph, np.asarray(node),
                             np.asarray(mid), np.asarray(store))


def answer_path_min(inst: ReductionInstance, engine, u: int, v: int) -> tuple[float, int]:
    """Minimum edge value on the tree path ``u..v`` and the child endpoint of that edge.

    ``engine`` answers ``query_beer_dist(s, t)`` and ``query_beer_path(s, t)``
    on ``inst.graph``.
    """
    if u == v:
        raise DegenerateTreeError("the path between a node and itself has no edges")
    ix = inst.index
    ell = ix.distance(u, v)
    s, t = int(inst.node[u]), int(inst.node[v])
    db = engine.query_beer_dist(s, t)
    path = engine.query_beer_path(s, t)
    owner = {int(x): e for e, x in enumerate(inst.store.tolist()) if x >= 0}
    hit = next(owner[x] for x in path.vertices if x in owner)
    return (db - 2 * ell) / 2, hit
