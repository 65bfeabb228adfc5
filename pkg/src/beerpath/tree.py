"""Static rooted-tree queries: LCA, level ancestor, subtree tests,
closest-colour, ordered path sums over a semigroup, and array RMQ.

Everything is built once and then queried; node ids are ``0..n-1``.
Scalar queries take Python ints, the ``*_many`` variants take arrays.
"""
from __future__ import annotations

from bisect import bisect_right

import operator
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, depth_first_order

from .exceptions import ColourMismatchError, EqualNodesError, MalformedTreeError

__all__ = [
    "RootedTree", "TreeIndex", "build_tree_index", "ColourPathSet", "Semigroup",
    "MinSemigroup", "ConcatSemigroup", "PathSumIndex", "build_path_sum", "RmqIndex",
    "build_rmq",
]


class RootedTree:
    """Tree given by a parent array; the root's parent is ``-1``."""

    def __init__(self, parent: Sequence[int]):
        parent = np.asarray(parent, dtype=np.int64)
        n = len(parent)
        if n == 0:
            raise MalformedTreeError("a tree needs at least one node")
        roots = np.flatnonzero(parent < 0)
        if len(roots) != 1:
            raise MalformedTreeError(f"expected exactly one root, found {len(roots)}")
        if (parent >= n).any():
            raise MalformedTreeError("parent id out of range")
        self.n = n
        self.root = int(roots[0])
        self.parent = parent
        self.parent.setflags(write=False)
        kids = np.flatnonzero(parent >= 0)
        mat = csr_matrix((np.ones(len(kids), dtype=np.int8), (parent[kids], kids)), shape=(n, n))
        order = breadth_first_order(mat, self.root, directed=True, return_predecessors=False)
        if len(order) != n:
            raise MalformedTreeError("parent array contains a cycle")
        self.order = order.astype(np.int64)
        self._mat = mat

    @classmethod
    def from_edges(cls, n: int, edges, root: int = 0) -> "RootedTree":
        edges = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if len(edges) != n - 1:
            raise MalformedTreeError(f"a tree on {n} nodes has {n - 1} edges, got {len(edges)}")
        if not 0 <= root < n:
            raise MalformedTreeError("root out of range")
        a, b = edges[:, 0], edges[:, 1]
        mat = csr_matrix((np.ones(2 * len(a), dtype=np.int8),
                          (np.concatenate([a, b]), np.concatenate([b, a]))), shape=(n, n))
        order, pred = breadth_first_order(mat, root, directed=False, return_predecessors=True)
        if len(order) != n:
            raise MalformedTreeError("edges do not connect all nodes")
        pred = pred.astype(np.int64)
        pred[root] = -1
        return cls(pred)

    def children(self, v: int) -> np.ndarray:
        return self._mat.indices[self._mat.indptr[v]:self._mat.indptr[v + 1]]


class TreeIndex:
    """Constant-time ancestry queries over a :class:`RootedTree`.

    LCA uses a sparse table over the preorder sequence: for ``u != v`` with
    ``tin[u] < tin[v]``, the LCA is the parent of the shallowest node in
    preorder positions ``(tin[u], tin[v]]``.  Level ancestors are found by
    binary search among the nodes of the requested depth, ordered by
    preorder number.
    """

    def __init__(self, tree: RootedTree):
        self.tree = tree
        n = tree.n
        parent = tree.parent
        par = parent.tolist()
        level = [0] * n
        for v in tree.order[1:].tolist():
            level[v] = level[par[v]] + 1
        size = [1] * n
        for v in tree.order[:0:-1].tolist():
            size[par[v]] += size[v]
        pre = depth_first_order(tree._mat, tree.root, directed=True, return_predecessors=False)
        tin = np.empty(n, dtype=np.int64)
        tin[pre] = np.arange(n)
        self.level = np.asarray(level, dtype=np.int64)
        self.size = np.asarray(size, dtype=np.int64)
        self.tin = tin
        self.tout = tin + self.size - 1
        self.preorder = pre.astype(np.int64)
        self._par = par
        self._lvl = level
        self._tin = tin.tolist()
        self._tout = self.tout.tolist()
        self._build_sparse()
        self._build_level_ancestor()

    def _build_sparse(self):
        depth = self.level[self.preorder]
        idx = np.arange(self.tree.n, dtype=np.int32)
        table = [idx]
        h = 1
        while 2 * h <= self.tree.n:
            prev = table[-1]
            a, b = prev[:-h], prev[h:]
            table.append(np.where(depth[a] <= depth[b], a, b).astype(np.int32))
            h *= 2
        self._sparse = table
        self._pre_depth = depth
        self._pre_depth_l = depth.tolist()
        self._preorder_l = self.preorder.tolist()

    def _build_level_ancestor(self):
        order = np.lexsort((self.tin, self.level))
        self._by_depth = order
        self._by_depth_tin = self.tin[order]
        counts = np.bincount(self.level, minlength=int(self.level.max()) + 1)
        self._depth_start = np.concatenate([[0], np.cumsum(counts)])
        self._by_depth_l = order.tolist()
        self._by_depth_tin_l = self._by_depth_tin.tolist()
        self._depth_start_l = self._depth_start.tolist()

    # -- scalar queries ------------------------------------------------------
    def is_ancestor(self, a: int, v: int) -> bool:
        """True iff ``v`` lies in the subtree rooted at ``a`` (inclusive)."""
        return self._tin[a] <= self._tin[v] <= self._tout[a]

    def in_subtree(self, v: int, r: int) -> bool:
        return self.is_ancestor(r, v)

    def lca(self, u: int, v: int) -> int:
        if u == v:
            return u
        i, j = self._tin[u], self._tin[v]
        if i > j:
            i, j = j, i
        lo = i + 1
        k = (j - lo + 1).bit_length() - 1
        row = self._sparse[k]
        a, b = int(row[lo]), int(row[j - (1 << k) + 1])
        depth = self._pre_depth_l
        best = a if depth[a] <= depth[b] else b
        return self._par[self._preorder_l[best]]

    def lca_many(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        out = u.copy()
        diff = u != v
        if not diff.any():
            return out
        i, j = self.tin[u[diff]], self.tin[v[diff]]
        lo = np.minimum(i, j) + 1
        hi = np.maximum(i, j)
        k = np.floor(np.log2(hi - lo + 1)).astype(np.int64)
        # guard float rounding at exact powers of two
        k -= (1 << k) > (hi - lo + 1)
        k += (1 << (k + 1)) <= (hi - lo + 1)
        best = np.empty(len(lo), dtype=np.int64)
        for kk in np.unique(k).tolist():
            sel = k == kk
            row = self._sparse[kk]
            a = row[lo[sel]].astype(np.int64)
            b = row[hi[sel] - (1 << kk) + 1].astype(np.int64)
            best[sel] = np.where(self._pre_depth[a] <= self._pre_depth[b], a, b)
        out[diff] = self.tree.parent[self.preorder[best]]
        return out

    def level_ancestor(self, v: int, d: int) -> int:
        """The ancestor of ``v`` at depth ``d`` (``0 <= d <= level(v)``)."""
        if not 0 <= d <= self._lvl[v]:
            raise ValueError(f"depth {d} is not between 0 and level({v})")
        s, e = self._depth_start_l[d], self._depth_start_l[d + 1]
        k = bisect_right(self._by_depth_tin_l, self._tin[v], s, e) - 1
        return self._by_depth_l[k]

    def second_on_path(self, u: int, v: int) -> int:
        if u == v:
            raise EqualNodesError("second node is undefined when u == v")
        if not self.is_ancestor(u, v):
            return self._par[u]
        return self.level_ancestor(v, self._lvl[u] + 1)

    def on_path(self, u: int, v: int, w: int) -> bool:
        w_up = self.is_ancestor(w, u) or self.is_ancestor(w, v)
        return w_up and self.is_ancestor(self.lca(u, v), w)

    def distance(self, u: int, v: int) -> int:
        return self._lvl[u] + self._lvl[v] - 2 * self._lvl[self.lca(u, v)]


def build_tree_index(tree: RootedTree) -> TreeIndex:
    return TreeIndex(tree)


class ColourPathSet:
    """Coloured vertical-or-bent paths in a tree, one path per colour.

    ``ends[c] = (c1, c2)`` are the two end nodes of the path ``P_c``.
    """

    MAX_COLOURS_PER_NODE = 3

    def __init__(self, index: TreeIndex, ends):
        ends = np.asarray(ends, dtype=np.int64).reshape(-1, 2)
        self.index = index
        self.c1 = ends[:, 0].copy()
        self.c2 = ends[:, 1].copy()
        self.ch = index.lca_many(self.c1, self.c2)
        self._c1 = self.c1.tolist()
        self._c2 = self.c2.tolist()
        self._ch = self.ch.tolist()

    @classmethod
    def from_node_colours(cls, index: TreeIndex, node_colours) -> "ColourPathSet":
        """Derive path ends from per-node colour lists, checking the path shape."""
        members: dict[int, list[int]] = {}
        for node, cols in enumerate(node_colours):
            if len(cols) > cls.MAX_COLOURS_PER_NODE:
                raise ColourMismatchError(f"node {node} carries {len(cols)} colours")
            for c in cols:
                members.setdefault(int(c), []).append(node)
        ncol = max(members, default=-1) + 1
        ends = np.zeros((ncol, 2), dtype=np.int64)
        for c in range(ncol):
            nodes = members.get(c)
            if not nodes:
                raise ColourMismatchError(f"colour {c} has no nodes")
            ends[c] = _path_ends(index, nodes)
        return cls(index, ends)

    def contains(self, c: int, w: int) -> bool:
        return self.index.on_path(self._c1[c], self._c2[c], w)

    def closest_colour(self, u: int, v: int, c: int) -> int:
        """Node of ``P_c`` nearest to ``v``; ``u`` must lie on ``P_c``."""
        ix = self.index
        c1, c2, ch = self._c1[c], self._c2[c], self._ch[c]
        if not ix.on_path(c1, c2, u):
            raise ColourMismatchError(f"node {u} is not on the path of colour {c}")
        if u == v or ix.on_path(c1, c2, v):
            return v
        lca = ix.lca(u, v)
        if lca == v:
            return ch
        lvl = ix._lvl
        if lca == u:
            a, b = ix.lca(v, c1), ix.lca(v, c2)
            return a if lvl[a] > lvl[b] else b
        if lvl[ch] > lvl[lca]:
            return ch
        if lvl[ch] < lvl[lca]:
            return lca
        if ix.is_ancestor(u, c1):
            return ix.lca(v, c2)
        return ix.lca(v, c1)


def _path_ends(index: TreeIndex, nodes) -> tuple[int, int]:
    nodeset = set(nodes)
    par = index._par
    ends = []
    for x in nodes:
        deg = (par[x] in nodeset) + sum(1 for y in index.tree.children(x).tolist() if y in nodeset)
        if deg > 2:
            raise ColourMismatchError("coloured nodes do not form a path")
        if deg <= 1:
            ends.append(x)
    if len(nodes) == 1:
        return nodes[0], nodes[0]
    if len(ends) != 2:
        raise ColourMismatchError("coloured nodes do not form a path")
    a, b = ends
    if index.distance(a, b) != len(nodes) - 1:
        raise ColourMismatchError("coloured nodes do not form a path")
    return a, b


# -- semigroup path sums -------------------------------------------------------

class Semigroup:
    """Associative operation on arrays of elements, vectorised over axis 0.

    ``flip`` maps the value of an edge to the value of the same edge walked
    in the opposite direction.  When ``flip(a + b) == flip(b) + flip(a)``
    holds, set ``antihomomorphic`` so reverse folds are derived instead of
    stored.
    """

    antihomomorphic = False

    def combine(self, a, b):
        raise NotImplementedError

    def flip(self, a):
        return a


class MinSemigroup(Semigroup):
    antihomomorphic = True

    def combine(self, a, b):
        return np.minimum(a, b)


class ConcatSemigroup(Semigroup):
    """Concatenation of strings or tuples stored in object arrays."""

    _add = np.frompyfunc(operator.add, 2, 1)

    def combine(self, a, b):
        out = self._add(a, b)
        return out if isinstance(out, np.ndarray) else np.asarray([out], dtype=object)[0]


class PathSumIndex:
    """Ordered folds of edge values along tree paths.

    ``values[v]`` is the value of the edge from ``v`` up to its parent (the
    root's entry is ignored).  Walking the edge downwards contributes
    ``semigroup.flip(values[v])``.

    Heavy-path decomposition splits every path into O(log n) pieces.  Whole
    pieces that start at a heavy-path head are read from per-path prefix
    folds; the one piece that ends below the LCA uses a segment tree over
    heavy-path positions.  Build is O(n log n) combines, queries take
    O(log n) combines.
    """

    def __init__(self, index: TreeIndex, values, semigroup: Semigroup):
        self.index = index
        self.sg = semigroup
        tree = index.tree
        n = tree.n
        values = np.asarray(values) if not isinstance(values, np.ndarray) else values
        if len(values) != n:
            raise ValueError(f"need one value per node, got {len(values)} for {n} nodes")
        self._decompose(tree, index)
        arr = values[self.node_at]
        down = semigroup.flip(arr)
        self._down_pref = self._prefix(down, reverse=False)
        self._up_pref = None if semigroup.antihomomorphic else self._prefix(arr, reverse=True)
        self._down_tree = self._seg_build(down, reverse=False)
        self._up_tree = None if semigroup.antihomomorphic else self._seg_build(arr, reverse=True)

    # -- build helpers --------------------------------------------------------
    def _decompose(self, tree: RootedTree, index: TreeIndex):
        n = tree.n
        par = index._par
        size = index.size
        heavy = np.full(n, -1, dtype=np.int64)
        # heaviest child of each node; ties go to the smallest id
        kids = np.flatnonzero(tree.parent >= 0)
        if len(kids):
            order = np.lexsort((kids, -size[kids], tree.parent[kids]))
            ks = kids[order]
            ps = tree.parent[ks]
            first = np.concatenate([[True], ps[1:] != ps[:-1]])
            heavy[ps[first]] = ks[first]
        head = [0] * n
        pos = [0] * n
        node_at = [0] * n
        hv = heavy.tolist()
        nxt = 0
        # walk heavy paths in BFS order of their heads
        for v in tree.order.tolist():
            p = par[v]
            if p >= 0 and hv[p] == v:
                continue
            x = v
            while x >= 0:
                head[x] = v
                pos[x] = nxt
                node_at[nxt] = x
                nxt += 1
                x = hv[x]
        self.head = np.asarray(head, dtype=np.int64)
        self.pos = np.asarray(pos, dtype=np.int64)
        self.node_at = np.asarray(node_at, dtype=np.int64)
        self._head = head
        self._pos = pos
        # position of each heavy path's head, per position
        self._head_pos = self.pos[self.head[self.node_at]]

    def _prefix(self, arr, reverse: bool):
        """Fold from each heavy-path head down to every position.

        Forward folds append on the right, reverse folds on the left, so a
        reverse prefix reads bottom-up.
        """
        out = arr.copy()
        n = len(arr)
        if n == 0:
            return out
        offset = np.arange(n) - self._head_pos
        # doubling scan: after the round with step h, out[p] folds the
        # last min(2h, offset+1) positions ending at p
        h = 1
        while h <= int(offset.max()):
            p = np.flatnonzero(offset >= h)
            if reverse:
                out[p] = self.sg.combine(out[p], out[p - h])
            else:
                out[p] = self.sg.combine(out[p - h], out[p])
            h *= 2
        return out

    def _seg_build(self, arr, reverse: bool):
        n = len(arr)
        size = 1
        while size < n:
            size *= 2
        shape = (2 * size,) + arr.shape[1:]
        tree = np.empty(shape, dtype=arr.dtype)
        valid = np.zeros(2 * size, dtype=bool)
        tree[size:size + n] = arr
        valid[size:size + n] = True
        lo = size // 2
        while lo >= 1:
            idx = np.arange(lo, 2 * lo)
            left, right = 2 * idx, 2 * idx + 1
            both = valid[left] & valid[right]
            only = valid[left] & ~valid[right]
            i2 = idx[both]
            if len(i2):
                if reverse:
                    tree[i2] = self.sg.combine(tree[2 * i2 + 1], tree[2 * i2])
                else:
                    tree[i2] = self.sg.combine(tree[2 * i2], tree[2 * i2 + 1])
            i1 = idx[only]
            tree[i1] = tree[2 * i1]
            valid[idx] = both | only
            lo //= 2
        return tree, size

    # -- queries -----------------------------------------------------------------
    def query(self, u: int, v: int):
        if u == v:
            raise EqualNodesError("path sum is undefined for u == v")
        return self.query_many(np.asarray([u]), np.asarray([v]))[0]

    def query_many(self, u, v):
        """Vectorised :meth:`query` over paired node arrays."""
        u = np.asarray(u, dtype=np.int64).copy()
        v = np.asarray(v, dtype=np.int64).copy()
        if (u == v).any():
            raise EqualNodesError("path sum is undefined for u == v")
        if len(u) == 0:
            return self._down_pref[:0]
        lca = self.index.lca_many(u, v)
        up = _Acc(self.sg, len(u))
        head, pos, parent = self.head, self.pos, self.index.tree.parent
        # climb from u: whole heavy-path prefixes, then a range below the LCA
        while True:
            act = np.flatnonzero(head[u] != head[lca])
            if not len(act):
                break
            piece = self._up_prefix(pos[u[act]])
            up.append(act, piece)
            u[act] = parent[head[u[act]]]
        act = np.flatnonzero(u != lca)
        if len(act):
            up.append(act, self._range(pos[lca[act]] + 1, pos[u[act]], reverse=True))
        down = _Acc(self.sg, len(v))
        while True:
            act = np.flatnonzero(head[v] != head[lca])
            if not len(act):
                break
            down.prepend(act, self._down_pref[pos[v[act]]])
            v[act] = parent[head[v[act]]]
        act = np.flatnonzero(v != lca)
        if len(act):
            down.prepend(act, self._range(pos[lca[act]] + 1, pos[v[act]], reverse=False))
        return up.join(down)

    def _up_prefix(self, p):
        if self._up_pref is not None:
            return self._up_pref[p]
        return self.sg.flip(self._down_pref[p])

    def _range(self, lo, hi, reverse: bool):
        """Fold of positions ``lo..hi`` inclusive; descending order if ``reverse``."""
        if reverse and self._up_tree is None:
            return self.sg.flip(self._range(lo, hi, reverse=False))
        tree, size = self._up_tree if reverse else self._down_tree
        k = len(lo)
        left = _Acc(self.sg, k)
        right = _Acc(self.sg, k)
        l = lo + size
        r = hi + size + 1
        while True:
            live = l < r
            if not live.any():
                break
            lodd = np.flatnonzero(live & (l & 1 == 1))
            if len(lodd):
                if reverse:
                    left.prepend(lodd, tree[l[lodd]])
                else:
                    left.append(lodd, tree[l[lodd]])
                l[lodd] += 1
            rodd = np.flatnonzero(live & (r & 1 == 1))
            if len(rodd):
                r[rodd] -= 1
                if reverse:
                    right.append(rodd, tree[r[rodd]])
                else:
                    right.prepend(rodd, tree[r[rodd]])
            l = l // 2
            r = r // 2
        if reverse:
            return right.join(left)
        return left.join(right)


class _Acc:
    """Per-query optional accumulator used while gathering pieces."""

    def __init__(self, sg: Semigroup, k: int):
        self.sg = sg
        self.k = k
        self.val = None
        self.has = np.zeros(k, dtype=bool)

    def _ensure(self, sample):
        if self.val is None:
            self.val = np.empty((self.k,) + sample.shape[1:], dtype=sample.dtype)

    def _put(self, idx, piece, left_side: bool):
        self._ensure(piece)
        had = self.has[idx]
        fresh = idx[~had]
        self.val[fresh] = piece[~had]
        old = idx[had]
        if len(old):
            if left_side:
                self.val[old] = self.sg.combine(piece[had], self.val[old])
            else:
                self.val[old] = self.sg.combine(self.val[old], piece[had])
        self.has[idx] = True

    def append(self, idx, piece):
        self._put(idx, piece, left_side=False)

    def prepend(self, idx, piece):
        self._put(idx, piece, left_side=True)

    def join(self, other: "_Acc"):
        if self.val is None:
            return other.val
        if other.val is None:
            return self.val
        out = self.val.copy()
        both = self.has & other.has
        only_other = ~self.has & other.has
        out[only_other] = other.val[only_other]
        if both.any():
            out[both] = self.sg.combine(self.val[both], other.val[both])
        return out


def build_path_sum(tree_or_index, values, semigroup: Semigroup) -> PathSumIndex:
    index = tree_or_index if isinstance(tree_or_index, TreeIndex) else TreeIndex(tree_or_index)
    return PathSumIndex(index, values, semigroup)


# -- range minimum -----------------------------------------------------------------

class RmqIndex:
    """Sparse-table range minimum returning the leftmost minimising index.

    ``max_span`` caps the table height when queries are known never to span
    more than that many entries (per-chain queries over a concatenated
    array), keeping memory linear in practice.
    """

    def __init__(self, values, max_span: int | None = None):
        vals = np.asarray(values, dtype=np.float64)
        self.values = vals
        n = len(vals)
        span = n if max_span is None else min(n, max_span)
        table = [np.arange(n, dtype=np.int64 if n > 2**31 - 1 else np.int32)]
        h = 1
        while 2 * h <= span:
            prev = table[-1]
            a, b = prev[:-h], prev[h:]
            table.append(np.where(vals[a] <= vals[b], a, b).astype(prev.dtype))
            h *= 2
        self._table = table
        self._span = span

    def query(self, i: int, j: int) -> int:
        if not (0 <= i <= j < len(self.values)):
            raise IndexError(f"invalid range [{i}, {j}] for length {len(self.values)}")
        if j - i + 1 > self._span:
            raise IndexError(f"range [{i}, {j}] exceeds the table span {self._span}")
        k = (j - i + 1).bit_length() - 1
        row = self._table[k]
        a, b = int(row[i]), int(row[j - (1 << k) + 1])
        return a if self.values[a] <= self.values[b] else b


def build_rmq(values, max_span: int | None = None) -> RmqIndex:
    return RmqIndex(values, max_span)
