"""Named fixture graphs and the worked end-to-end query trace."""
from __future__ import annotations

from .engine import BeerPathEngine
from .exceptions import UnknownFixtureError
from .graph import FIX_F4, FIX_H6, FIX_T3, BeerGraph, dumps_graph
from .paths import build_dag

#: Two fans glued along (2,4) and (4,7): hull of 8 unit edges plus five unit chords.
FIX_8FAN = BeerGraph(
    8,
    [(i, i + 1, 1.0) for i in range(7)] + [(0, 7, 1.0)]
    + [(0, 2, 1.0), (2, 4, 1.0), (2, 7, 1.0), (4, 6, 1.0), (4, 7, 1.0)],
    [6],
)

FIXTURES = {
    "FIX-T3": FIX_T3,
    "FIX-F4": FIX_F4,
    "FIX-H6": FIX_H6,
    "FIX-8FAN": FIX_8FAN,
}


def get_fixture(name: str) -> BeerGraph:
    try:
        return FIXTURES[name]
    except KeyError:
        raise UnknownFixtureError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


def emit_fixture(name: str) -> str:
    """Graph-file text of a named fixture, newline terminated."""
    return dumps_graph(get_fixture(name)) + "\n"


def _num(x: float) -> str:
    return "inf" if x == float("inf") else repr(float(x))


def query_trace(graph: BeerGraph, s: int, t: int, root_face=None) -> str:
    """Line-oriented record of every stage of one beer-path query."""
    eng = BeerPathEngine(graph, root_face)
    dual = eng.dual
    lines = [f"graph n={graph.n} m={graph.m} beer={sorted(graph.beer)}"]
    added = eng.norm.added_edges
    lines.append(f"normalize added={added} repaired={sorted(eng.norm.parent_map.items())}")
    for f in range(dual.n_faces):
        p = int(dual.tree.parent[f])
        lines.append(f"face {f} {dual.face_vertices(f)} parent={p} level={int(dual.index.level[f])}")
    fs, ft = int(dual.face_of[s]), int(dual.face_of[t])
    lines.append(f"query s={s} t={t} face_of(s)={fs} face_of(t)={ft}")
    if fs != ft:
        q = eng.oracle.summary(fs, ft)
        for layer, name in ((0, "dist"), (1, "dist_b")):
            rows = [" ".join(_num(x) for x in row) for row in q.table[layer]]
            lines.append(f"Q[{fs},{ft}].{name} rows={q.source_vertices} cols={q.target_vertices}: "
                         + " | ".join(rows))
    lines.append(f"dist={_num(eng.query_dist(s, t))} dist_b={_num(eng.query_beer_dist(s, t))}")
    if not eng.ctx.in_fan(s, t):
        dag = build_dag(eng.ctx, s, t)
        for i, col in enumerate(dag.columns):
            vals = " ".join(f"{v}:({_num(dag.dist[v])},{_num(dag.dist_b[v])})" for v in col)
            lines.append(f"column {i} {vals}")
        for e in dag.edges:
            lines.append(f"dag-edge {e.src}->{e.dst} plain={_num(e.plain)} beer={_num(e.beer)} fan={e.context}")
    else:
        lines.append("fan case: answered from the fan of s")
    path = eng.query_beer_path(s, t)
    lines.append(f"path {' '.join(map(str, path.vertices))} weight={_num(path.weight)} store_at={path.store}")
    return "\n".join(lines) + "\n"
