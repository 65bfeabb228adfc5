import numpy as np
import pytest

from beerpath.dual import build_chains, build_dual, chain_dist, face_of
from beerpath.exceptions import NotOnChainError
from beerpath.graph import FIX_F4, FIX_H6, FIX_T3
from beerpath.normalize import normalize


def test_triangle_has_one_face():
    dual = build_dual(FIX_T3)
    assert dual.n_faces == 1
    assert dual.dual_edges() == []
    assert all(face_of(dual, v) == (0, 1, 2) for v in range(3))


def test_square_faces():
    dual = build_dual(FIX_F4)
    assert [dual.face_vertices(f) for f in range(2)] == [(0, 1, 2), (0, 2, 3)]
    assert dual.dual_edges() == [(0, 1, (0, 2))]
    assert face_of(dual, 3) == (0, 2, 3)
    assert face_of(dual, 1) == (0, 1, 2)


def test_hexagon_faces_and_dual():
    dual = build_dual(FIX_H6)
    assert dual.n_faces == 4
    assert [dual.face_vertices(f) for f in range(4)] == [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5)]
    assert [e for _, _, e in dual.dual_edges()] == [(0, 2), (0, 3), (0, 4)]
    assert face_of(dual, 4) == (0, 3, 4)
    assert dual.shared_edge(1, 2) == (0, 3)
    with pytest.raises(ValueError):
        dual.shared_edge(0, 3)


def test_root_by_triple():
    dual = build_dual(FIX_H6, (0, 4, 5))
    assert dual.face_vertices(dual.root) == (0, 4, 5)
    assert int(dual.index.level[dual.face_id((0, 1, 2))]) == 3


def test_hexagon_chains():
    chains = build_chains(build_dual(FIX_H6))
    # neighbours of 2 clockwise starting after 2
    assert chains.chain(2) == (3, 0, 1)
    assert chains.chain(0) == (1, 2, 3, 4, 5)
    assert chain_dist(chains, 0, 1, 4) == 3.0
    assert chain_dist(chains, 0, 4, 1) == 3.0
    with pytest.raises(NotOnChainError):
        chains.position(2, 5)


def _check_invariants(graph):
    norm = normalize(graph)
    g = norm.graph
    dual = build_dual(norm)
    n = g.n
    assert dual.n_faces == n - 2
    for v in range(n):
        members = [f for f in range(dual.n_faces) if dual.contains(f, v)]
        # the faces around v form a dual path whose ends hold v's hull edges
        a, b = int(dual.end_cw[v]), int(dual.end_ccw[v])
        ix = dual.index
        assert sorted(members) == sorted(f for f in range(dual.n_faces) if ix.on_path(a, b, f))
        assert int(dual.face_of[v]) == min(a, b)
    chains = build_chains(dual)
    for v in range(n):
        ch = chains.chain(v)
        assert sorted(ch) == sorted(int(x) for x in g.neighbors(v))
        for x, y in zip(ch, ch[1:]):
            assert g.has_edge(x, y)
        pre = chains.prefix_weights(v)
        assert pre[0] == 0.0 and all(p <= q for p, q in zip(pre, pre[1:]))


def test_dual_invariants(corpus):
    for g in corpus:
        _check_invariants(g)


def test_every_root_gives_same_faces():
    g = normalize(FIX_H6).graph
    base = build_dual(g).faces.tolist()
    for r in range(4):
        dual = build_dual(g, r)
        assert dual.faces.tolist() == base
        assert np.count_nonzero(dual.tree.parent < 0) == 1
