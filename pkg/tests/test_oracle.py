import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from beerpath.engine import BeerPathEngine
from beerpath.exceptions import IncompatibleFacesError
from beerpath.graph import FIX_F4, FIX_H6, FIX_T3
from beerpath.harness import gen_random_maximal, gen_random_outerplanar, oracle_all_pairs
from beerpath.oracle import base_summary, combine, query_beer_dist, query_dist


def test_square_base_summary():
    eng = BeerPathEngine(FIX_F4)
    q = base_summary(eng.dual, eng.tables, 0, 1)
    assert q.size == 18
    assert q.dist(1, 3) == 2.0
    assert q.beer_dist(1, 3) == oracle_all_pairs(FIX_F4).dist_b[1, 3] == 2.0
    assert q.reversed().dist(3, 1) == 2.0


def test_hexagon_queries():
    eng = BeerPathEngine(FIX_H6)
    assert query_dist(eng.oracle, 1, 4) == 2.0
    assert query_beer_dist(eng.oracle, 1, 4) == 3.0
    assert query_beer_dist(eng.oracle, 2, 2) == 4.0
    assert eng.oracle.n_path_sum_edges == 3


def test_triangle_has_empty_path_sum():
    eng = BeerPathEngine(FIX_T3)
    assert eng.oracle.n_path_sum_edges == 0
    assert eng.query_beer_dist(0, 1) == 2.0


def test_combine_is_associative_on_hexagon():
    eng = BeerPathEngine(FIX_H6)
    d, t = eng.dual, eng.tables
    q01, q12, q23 = (base_summary(d, t, f, f + 1) for f in range(3))
    left = combine(combine(q01, q12, d), q23, d)
    right = combine(q01, combine(q12, q23, d), d)
    assert left == right
    assert left == eng.oracle.summary(0, 3)


def test_combine_rejects_mismatched_faces():
    eng = BeerPathEngine(FIX_H6)
    d, t = eng.dual, eng.tables
    with pytest.raises(IncompatibleFacesError):
        combine(base_summary(d, t, 0, 1), base_summary(d, t, 2, 3))
    q = base_summary(d, t, 0, 1)
    assert combine(q, q) is q


def _all_pairs(eng, n):
    u, v = np.divmod(np.arange(n * n), n)
    d, b = eng.query_many(u, v)
    return d.reshape(n, n), b.reshape(n, n)


def test_corpus_matches_oracle(corpus, oracle):
    for g in corpus:
        d, b = _all_pairs(BeerPathEngine(g), g.n)
        orc = oracle(g)
        assert np.array_equal(d, orc.dist)
        assert np.array_equal(b, orc.dist_b)


def test_scalar_and_batch_agree(corpus):
    g = corpus[0]
    eng = BeerPathEngine(g)
    d, b = _all_pairs(eng, g.n)
    for u in range(g.n):
        for v in range(g.n):
            assert eng.query_dist(u, v) == d[u, v]
            assert eng.query_beer_dist(u, v) == b[u, v]


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 40), st.integers(0, 10**6), st.booleans(), st.data())
def test_symmetric_and_root_independent(n, seed, maximal, data):
    g = gen_random_maximal(n, seed, 0.2) if maximal else gen_random_outerplanar(n, seed, 0.4, 0.2)
    root = data.draw(st.integers(0, n - 3))
    d, b = _all_pairs(BeerPathEngine(g), n)
    d2, b2 = _all_pairs(BeerPathEngine(g, root), n)
    assert np.array_equal(d, d.T) and np.array_equal(b, b.T)
    assert np.array_equal(d, d2) and np.array_equal(b, b2)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 40), st.integers(0, 10**6))
def test_beer_dist_is_min_over_stores(n, seed):
    g = gen_random_maximal(n, seed, 0.2)
    d, b = _all_pairs(BeerPathEngine(g), n)
    if not g.beer:
        assert np.isinf(b).all()
        return
    stores = sorted(g.beer)
    want = np.min(d[:, stores][:, None, :] + d[stores, :].T[None, :, :], axis=2)
    assert np.array_equal(b, want)
    assert (b >= d).all()
