import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from beerpath.dual import build_dual
from beerpath.exceptions import ColourMismatchError, EqualNodesError, MalformedTreeError
from beerpath.graph import FIX_H6
from beerpath.tree import (ColourPathSet, ConcatSemigroup, MinSemigroup, RootedTree, build_path_sum,
                           build_rmq, build_tree_index)

CHAIN = RootedTree([-1, 0, 1, 2])
STAR = RootedTree([-1, 0, 0, 0])


def random_tree(n, seed):
    rng = np.random.default_rng(seed)
    parent = [-1] + [int(rng.integers(0, i)) for i in range(1, n)]
    perm = rng.permutation(n)
    relabel = np.empty(n, dtype=np.int64)
    relabel[perm] = np.arange(n)
    out = np.full(n, -1, dtype=np.int64)
    for v in range(1, n):
        out[relabel[v]] = relabel[parent[v]]
    return RootedTree(out)


def bfs_dist(tree):
    n = tree.n
    adj = [[] for _ in range(n)]
    for v in range(n):
        p = int(tree.parent[v])
        if p >= 0:
            adj[v].append(p)
            adj[p].append(v)
    d = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        d[s, s] = 0
        q = [s]
        for x in q:
            for y in adj[x]:
                if d[s, y] < 0:
                    d[s, y] = d[s, x] + 1
                    q.append(y)
    return d


def test_chain_queries():
    ix = build_tree_index(RootedTree([-1, 0, 1]))
    assert ix.level[2] == 2
    assert ix.lca(1, 2) == 1


def test_star_queries():
    ix = build_tree_index(STAR)
    assert ix.lca(1, 2) == 0
    assert ix.in_subtree(1, 0)
    assert not ix.in_subtree(1, 2)
    assert ix.second_on_path(1, 2) == 0


def test_second_on_path_chain():
    ix = build_tree_index(CHAIN)
    assert ix.second_on_path(0, 3) == 1
    assert ix.second_on_path(3, 0) == 2
    with pytest.raises(EqualNodesError):
        ix.second_on_path(2, 2)


def test_on_path_chain():
    ix = build_tree_index(CHAIN)
    assert ix.on_path(0, 3, 0)
    assert ix.on_path(0, 3, 2)
    assert not ix.on_path(0, 1, 3)


def test_malformed_trees():
    with pytest.raises(MalformedTreeError):
        RootedTree([-1, -1])
    with pytest.raises(MalformedTreeError):
        RootedTree([-1, 2, 1])
    with pytest.raises(MalformedTreeError):
        RootedTree.from_edges(3, [(0, 1)])


def test_hexagon_dual_queries():
    dual = build_dual(FIX_H6)
    f = dual.face_id
    ix = dual.index
    assert ix.level[f((0, 4, 5))] == 3
    assert ix.on_path(f((0, 1, 2)), f((0, 4, 5)), f((0, 2, 3)))
    assert dual.colours.closest_colour(f((0, 1, 2)), f((0, 4, 5)), 2) == f((0, 2, 3))


def test_closest_colour_cases():
    ix = build_tree_index(CHAIN)
    cps = ColourPathSet(ix, [(0, 1)])
    assert cps.closest_colour(1, 3, 0) == 1
    assert cps.closest_colour(0, 1, 0) == 1
    with pytest.raises(ColourMismatchError):
        cps.closest_colour(3, 0, 0)


def test_colour_paths_from_nodes():
    ix = build_tree_index(CHAIN)
    cps = ColourPathSet.from_node_colours(ix, [[0], [0, 1], [1], [1]])
    assert sorted((int(cps.c1[1]), int(cps.c2[1]))) == [1, 3]
    with pytest.raises(ColourMismatchError):
        ColourPathSet.from_node_colours(ix, [[0, 1, 2, 3], [], [], []])


def test_path_sum_single_edge_min():
    ps = build_path_sum(RootedTree([-1, 0]), np.array([np.inf, 7.5]), MinSemigroup())
    assert ps.query(0, 1) == 7.5
    with pytest.raises(EqualNodesError):
        ps.query(1, 1)


def test_path_sum_order_sensitive():
    vals = np.array(["", "a", "b"], dtype=object)
    ps = build_path_sum(RootedTree([-1, 0, 1]), vals, ConcatSemigroup())
    assert ps.query(0, 2) == "ab"
    assert ps.query(2, 0) == "ba"


def test_rmq_examples():
    assert build_rmq([5.0]).query(0, 0) == 0
    assert build_rmq([3.0, 1.0, 2.0, 1.0]).query(0, 3) == 1
    with pytest.raises(IndexError):
        build_rmq([1.0, 2.0]).query(1, 0)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 1000), st.integers(0, 10**6))
def test_rmq_matches_scan(n, seed):
    rng = np.random.default_rng(seed)
    vals = rng.integers(0, 5, n).astype(float)
    rmq = build_rmq(vals)
    for _ in range(300):
        i, j = sorted(rng.integers(0, n, 2).tolist())
        assert rmq.query(i, j) == i + int(np.argmin(vals[i:j + 1]))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 40), st.integers(0, 10**6))
def test_on_path_and_second_node(n, seed):
    tree = random_tree(n, seed)
    ix = build_tree_index(tree)
    d = bfs_dist(tree)
    for u, v in itertools.product(range(n), repeat=2):
        assert ix.distance(u, v) == d[u, v]
        for w in range(n):
            assert ix.on_path(u, v, w) == (d[u, w] + d[w, v] == d[u, v])
        if u != v:
            s = ix.second_on_path(u, v)
            assert d[u, s] == 1 and ix.on_path(u, v, s)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 40), st.integers(0, 10**6))
def test_level_ancestor(n, seed):
    tree = random_tree(n, seed)
    ix = build_tree_index(tree)
    for v in range(n):
        x, chain = v, [v]
        while tree.parent[x] >= 0:
            x = int(tree.parent[x])
            chain.append(x)
        for a in chain:
            assert ix.level_ancestor(v, int(ix.level[a])) == a


def _colour_paths(tree, rng, k):
    """k random tree paths as colours, at most 3 per node."""
    ix = build_tree_index(tree)
    load = np.zeros(tree.n, dtype=np.int64)
    ends = []
    for _ in range(k):
        a, b = rng.integers(0, tree.n, 2).tolist()
        nodes = [w for w in range(tree.n) if ix.on_path(a, b, w)]
        if (load[nodes] >= 3).any():
            continue
        load[nodes] += 1
        ends.append((a, b))
    return ix, ends


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 30), st.integers(0, 10**6))
def test_closest_colour_brute_force(n, seed):
    tree = random_tree(n, seed)
    rng = np.random.default_rng(seed)
    ix, ends = _colour_paths(tree, rng, 6)
    if not ends:
        return
    cps = ColourPathSet(ix, ends)
    d = bfs_dist(tree)
    for c, (a, b) in enumerate(ends):
        members = [w for w in range(n) if ix.on_path(a, b, w)]
        for u in members:
            for v in range(n):
                got = cps.closest_colour(u, v, c)
                assert got in members
                assert d[got, v] == min(d[w, v] for w in members)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 50), st.integers(0, 10**6))
def test_path_sum_traces_edges(n, seed):
    tree = random_tree(n, seed)
    ix = build_tree_index(tree)
    # value of node v's parent edge is the token "v>p"; flipping gives "p>v"
    vals = np.empty(n, dtype=object)
    for v in range(n):
        vals[v] = (f"{v}>{tree.parent[v]},",)
    ps = build_path_sum(ix, vals, _TraceSemigroup())
    rng = np.random.default_rng(seed)
    for _ in range(60):
        u, v = rng.integers(0, n, 2).tolist()
        if u == v:
            continue
        path = [u]
        while path[-1] != v:
            path.append(ix.second_on_path(path[-1], v))
        want = tuple(f"{a}>{b}," for a, b in zip(path, path[1:]))
        assert ps.query(u, v) == want


class _TraceSemigroup(ConcatSemigroup):
    """Sequence concatenation where walking an edge downwards reverses its label."""

    antihomomorphic = False

    def flip(self, a):
        out = np.empty(len(a), dtype=object)
        for i, seq in enumerate(a):
            out[i] = tuple(_rev(tok) for tok in reversed(seq)) if seq is not None else None
        return out


def _rev(tok):
    a, b = tok[:-1].split(">")
    return f"{b}>{a},"


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 50), st.integers(0, 10**6))
def test_path_sum_min_matches_naive(n, seed):
    tree = random_tree(n, seed)
    ix = build_tree_index(tree)
    rng = np.random.default_rng(seed)
    vals = rng.random(n)
    ps = build_path_sum(ix, vals, MinSemigroup())
    u = rng.integers(0, n, 100)
    v = rng.integers(0, n, 100)
    keep = u != v
    got = ps.query_many(u[keep], v[keep])
    for a, b, g in zip(u[keep], v[keep], got):
        best = np.inf
        x, y = int(a), int(b)
        while x != y:
            if ix.level[x] >= ix.level[y]:
                best = min(best, vals[x])
                x = int(tree.parent[x])
            else:
                best = min(best, vals[y])
                y = int(tree.parent[y])
        assert g == best
