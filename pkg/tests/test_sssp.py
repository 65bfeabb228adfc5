import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from beerpath.engine import BeerPathEngine
from beerpath.exceptions import UnreachableError
from beerpath.graph import FIX_F4, FIX_H6, FIX_T3, BeerGraph
from beerpath.harness import gen_random_maximal, gen_random_outerplanar
from beerpath.sssp import sssp_beer, sssp_beer_path


def test_triangle_from_zero():
    res = BeerPathEngine(FIX_T3).sssp(0)
    assert res.dist.tolist() == [0.0, 1.0, 1.0]
    # the edge 0-2 already ends at the store
    assert res.dist_b.tolist() == [2.0, 2.0, 1.0]
    assert sssp_beer_path(res, 1).vertices == (0, 2, 1)


def test_hexagon_from_one():
    eng = BeerPathEngine(FIX_H6)
    res = sssp_beer(eng.ctx, 1)
    assert res.dist_b[4] == 3.0
    assert res.dist_b[1] == 4.0
    p = eng.sssp_path(res, 4)
    assert p.weight == 3.0 and p.vertices[0] == 1 and p.vertices[-1] == 4


def test_store_source():
    res = BeerPathEngine(FIX_F4).sssp(3)
    assert np.array_equal(res.dist, res.dist_b)
    assert sssp_beer_path(res, 3).vertices == (3,)


def test_square_from_one():
    res = BeerPathEngine(FIX_F4).sssp(1)
    assert res.dist_b.tolist() == [3.0, 4.0, 3.0, 2.0]


def test_unreachable_without_stores():
    g = BeerGraph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)], [])
    res = BeerPathEngine(g).sssp(0)
    assert np.isinf(res.dist_b).all()
    with pytest.raises(UnreachableError):
        sssp_beer_path(res, 2)


def _check(g, oracle_tables):
    eng = BeerPathEngine(g)
    for s in range(g.n):
        res = eng.sssp(s)
        assert np.array_equal(res.dist, oracle_tables.dist[s])
        assert np.array_equal(res.dist_b, oracle_tables.dist_b[s])
        for v in range(g.n):
            if math.isinf(res.dist_b[v]):
                continue
            p = eng.sssp_path(res, v)
            assert p.vertices[0] == s and p.vertices[-1] == v
            assert all(g.has_edge(a, b) for a, b in zip(p.vertices, p.vertices[1:]))
            assert p.vertices[p.store] in g.beer
            assert p.weight == res.dist_b[v]


def test_corpus_all_sources(corpus, oracle):
    for g in corpus:
        _check(g, oracle(g))


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 40), st.integers(0, 10**6), st.booleans())
def test_matches_distance_oracle(n, seed, maximal):
    g = gen_random_maximal(n, seed, 0.2) if maximal else gen_random_outerplanar(n, seed, 0.5, 0.2)
    eng = BeerPathEngine(g)
    u, v = np.divmod(np.arange(n * n), n)
    d, b = eng.query_many(u, v)
    for s in range(n):
        res = eng.sssp(s)
        assert np.array_equal(res.dist, d[s * n:(s + 1) * n])
        assert np.array_equal(res.dist_b, b[s * n:(s + 1) * n])
        assert (res.dist_b >= res.dist).all()
