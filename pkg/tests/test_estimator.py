import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from beerpath import OuterplanarBeerOracle
from beerpath.fixtures import emit_fixture
from beerpath.graph import FIX_H6
from beerpath.harness import gen_random_maximal, oracle_all_pairs


def test_fit_predict_hexagon():
    est = OuterplanarBeerOracle().fit(FIX_H6)
    assert est.n_vertices_ == 6 and est.n_faces_ == 4
    assert est.predict([[1, 4], [2, 2]]).tolist() == [3.0, 4.0]
    assert est.set_params(mode="dist").predict([[1, 4]]).tolist() == [2.0]


def test_fit_from_text_and_path(tmp_path):
    text = emit_fixture("FIX-H6")
    p = tmp_path / "h6.json"
    p.write_text(text)
    for src in (text, str(p), p):
        assert OuterplanarBeerOracle().fit(src).predict([[1, 4]])[0] == 3.0


def test_params_and_clone():
    est = OuterplanarBeerOracle(root_face=2, mode="dist")
    assert est.get_params() == {"root_face": 2, "mode": "dist"}
    c = clone(est)
    assert c.get_params() == est.get_params() and not hasattr(c, "engine_")


def test_not_fitted():
    with pytest.raises(NotFittedError):
        OuterplanarBeerOracle().predict([[0, 1]])


def test_bad_inputs():
    est = OuterplanarBeerOracle().fit(FIX_H6)
    with pytest.raises(ValueError):
        est.predict([[0, 1, 2]])
    with pytest.raises(ValueError):
        est.predict([[0, 6]])
    with pytest.raises(ValueError):
        OuterplanarBeerOracle(mode="nope").fit(FIX_H6)
    with pytest.raises(TypeError):
        OuterplanarBeerOracle().fit(42)


def test_matches_oracle_and_extras():
    g = gen_random_maximal(30, 4, 0.2)
    est = OuterplanarBeerOracle(root_face=5).fit(g)
    pairs = np.stack(np.divmod(np.arange(900), 30), axis=1)
    d, b = est.predict_both(pairs)
    orc = oracle_all_pairs(g)
    assert np.array_equal(d.reshape(30, 30), orc.dist)
    assert np.array_equal(b.reshape(30, 30), orc.dist_b)
    dist, dist_b = est.sssp(3)
    assert np.array_equal(dist_b, orc.dist_b[3])
    assert est.beer_path(3, 17).weight == orc.dist_b[3, 17]
