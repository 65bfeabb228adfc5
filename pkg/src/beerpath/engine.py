"""One object holding every index built for a graph."""
from __future__ import annotations

import numpy as np

from .beerbase import build_beer_base
from .dual import build_dual
from .graph import BeerGraph, PathInG
from .normalize import NormalizedGraph, normalize
from .oracle import BeerDistanceOracle
from .paths import PathContext, query_beer_path
from .sssp import SsspBeerResult, sssp_beer, sssp_beer_path


class BeerPathEngine:
    """Normalizes ``graph`` and builds the dual, the beer-base tables and
    the fan index.  The distance oracle is built on first use, since path
    and single-source queries do not need it."""

    def __init__(self, graph: BeerGraph, root_face=None):
        self.original = graph
        self.norm: NormalizedGraph = normalize(graph)
        self.dual = build_dual(self.norm, root_face)
        self.tables = build_beer_base(self.dual)
        self.ctx = PathContext(self.norm, self.dual, self.tables)
        self._oracle: BeerDistanceOracle | None = None

    @property
    def n(self) -> int:
        return self.original.n

    @property
    def oracle(self) -> BeerDistanceOracle:
        if self._oracle is None:
            self._oracle = BeerDistanceOracle(self.dual, self.tables)
        return self._oracle

    def query_dist(self, u: int, v: int) -> float:
        return self.oracle.query_dist(u, v)

    def query_beer_dist(self, u: int, v: int) -> float:
        return self.oracle.query_beer_dist(u, v)

    def query_many(self, u, v) -> tuple[np.ndarray, np.ndarray]:
        return self.oracle.query_many(u, v)

    def query_beer_path(self, s: int, t: int) -> PathInG:
        return query_beer_path(self.ctx, s, t)

    def sssp(self, s: int) -> SsspBeerResult:
        return sssp_beer(self.ctx, s)

    def sssp_path(self, result: SsspBeerResult, v: int) -> PathInG:
        return sssp_beer_path(result, v)


def build_engine(graph: BeerGraph, root_face=None) -> BeerPathEngine:
    return BeerPathEngine(graph, root_face)
