"""Scikit-learn style wrapper around :class:`BeerPathEngine`.

``fit`` takes a graph; ``predict`` takes an ``(k, 2)`` array of vertex
pairs and returns one distance per pair.
"""
from __future__ import annotations

import os

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .engine import BeerPathEngine
from .graph import BeerGraph, PathInG, loads_graph, read_graph

MODES = ("beer-dist", "dist")


def _as_graph(X) -> BeerGraph:
    if isinstance(X, BeerGraph):
        return X
    if isinstance(X, (str, os.PathLike)):
        text = str(X)
        if text.lstrip().startswith("{"):
            return loads_graph(text)
        return read_graph(X)
    raise TypeError(f"expected a BeerGraph, a JSON string or a file path, got {type(X).__name__}")


class OuterplanarBeerOracle(BaseEstimator):
    """Distance and beer-distance queries on an outerplanar beer graph.

    Parameters
    ----------
    root_face : int, tuple or None
        Face to root the dual at (id or vertex triple); answers do not depend on it.
    mode : {"beer-dist", "dist"}
        What ``predict`` returns.
    """

    def __init__(self, root_face=None, mode: str = "beer-dist"):
        self.root_face = root_face
        self.mode = mode

    def fit(self, X, y=None):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        graph = _as_graph(X)
        self.engine_ = BeerPathEngine(graph, self.root_face)
        self.n_vertices_ = graph.n
        self.n_faces_ = self.engine_.dual.n_faces
        return self

    def _pairs(self, X) -> np.ndarray:
        X = check_array(X, dtype=np.int64, ensure_min_samples=0)
        if X.shape[1] != 2:
            raise ValueError(f"expected pairs of shape (k, 2), got {X.shape}")
        if X.size and (X.min() < 0 or X.max() >= self.n_vertices_):
            raise ValueError(f"vertex ids must lie in [0, {self.n_vertices_})")
        return X

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "engine_")
        X = self._pairs(X)
        d, b = self.engine_.query_many(X[:, 0], X[:, 1])
        return b if self.mode == "beer-dist" else d

    def predict_both(self, X) -> tuple[np.ndarray, np.ndarray]:
        check_is_fitted(self, "engine_")
        X = self._pairs(X)
        return self.engine_.query_many(X[:, 0], X[:, 1])

    def beer_path(self, s: int, t: int) -> PathInG:
        check_is_fitted(self, "engine_")
        return self.engine_.query_beer_path(int(s), int(t))

    def sssp(self, s: int) -> tuple[np.ndarray, np.ndarray]:
        check_is_fitted(self, "engine_")
        res = self.engine_.sssp(int(s))
        return res.dist, res.dist_b
