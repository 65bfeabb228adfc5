from pathlib import Path

import pytest

from beerpath.engine import BeerPathEngine
from beerpath.exceptions import UnknownFixtureError
from beerpath.fixtures import FIXTURES, emit_fixture, get_fixture, query_trace
from beerpath.graph import loads_graph, validate
from beerpath.harness import oracle_all_pairs

GOLDEN = Path(__file__).parent / "golden"
DOCS = Path(__file__).parent.parent / "docs" / "fixtures.md"


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_emit_matches_golden(name):
    text = emit_fixture(name)
    assert text == (GOLDEN / f"{name.lower()}.json").read_text()
    assert loads_graph(text).n == get_fixture(name).n


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_valid_and_consistent(name):
    g = get_fixture(name)
    assert validate(g).ok
    eng = BeerPathEngine(g)
    orc = oracle_all_pairs(g)
    for s in range(g.n):
        for t in range(g.n):
            assert eng.query_beer_dist(s, t) == orc.dist_b[s, t]


def test_unknown_fixture():
    with pytest.raises(UnknownFixtureError):
        emit_fixture("FIX-NOPE")


@pytest.mark.parametrize("name,s,t,golden", [
    ("FIX-8FAN", 1, 5, "trace_fix8fan_1_5.txt"),
    ("FIX-H6", 1, 4, "trace_fixh6_1_4.txt"),
])
def test_trace_matches_golden(name, s, t, golden):
    assert query_trace(get_fixture(name), s, t) == (GOLDEN / golden).read_text()


def test_trace_roots_agree_on_answer():
    g = get_fixture("FIX-8FAN")
    for root in range(6):
        tail = query_trace(g, 1, 5, root).splitlines()[-1]
        assert tail.startswith("path ") and tail.endswith("weight=4.0 store_at=3")


def test_docs_embed_the_golden_trace():
    assert (GOLDEN / "trace_fix8fan_1_5.txt").read_text() in DOCS.read_text()


def test_documented_values():
    orc = {n: oracle_all_pairs(get_fixture(n)) for n in FIXTURES}
    assert orc["FIX-T3"].dist_b[0, 1] == 2.0 and orc["FIX-T3"].dist_b[0, 2] == 1.0
    assert orc["FIX-F4"].dist_b[1].tolist() == [3.0, 4.0, 3.0, 2.0]
    assert orc["FIX-H6"].dist[1, 4] == 2.0 and orc["FIX-H6"].dist_b[1, 4] == 3.0
    assert orc["FIX-H6"].dist_b[2, 2] == 4.0
    assert orc["FIX-8FAN"].dist[1, 5] == 3.0 and orc["FIX-8FAN"].dist_b[1, 5] == 4.0
