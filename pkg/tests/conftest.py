import functools
import sys

import numpy as np
import pytest

from beerpath.graph import BeerGraph
from beerpath.harness import gen_random_maximal, gen_random_outerplanar, oracle_all_pairs


def small_corpus(count=30, max_n=40, seed=0):
    """Mixed maximal, chord-thinned and tree graphs with at least one store."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(3, max_n + 1))
        s = int(rng.integers(0, 2**31))
        kind = i % 3
        if kind == 0:
            g = gen_random_maximal(n, s, 0.15)
        elif kind == 1:
            g = gen_random_outerplanar(n, s, 0.5, 0.15)
        else:
            g = gen_random_outerplanar(n, s, beer_fraction=0.15, tree=True)
        if not g.beer:
            g = g.with_beer([n // 2])
        out.append(g)
    return out


@functools.lru_cache(maxsize=None)
def _oracle_cached(graph: BeerGraph):
    return oracle_all_pairs(graph)


@pytest.fixture
def oracle():
    return _oracle_cached


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
