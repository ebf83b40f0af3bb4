"""Input loading, JSON reports and the brute-force cubical homology oracle."""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from math import comb

from . import __version__
from .errors import BudgetExceeded, GraphBraidError, InvalidGraph
from .exact_algebra import HomologySummary, homology_sparse
from .graph_model import STRICT, VALENCY2_ENDS, EmbeddedTree, Graph, choose_maximal_tree, subdivide_for_index

DEFAULT_BUDGET = 2_000_000
SAFE_INT = 2**53

# fixtures with a shipped Tietze script
FIXTURE_SCRIPTS = {
    "S0": "s0",
    "Fig2": "s0",
    "Fig13": "s0",
    "Theta": "theta",
    "Fig14": "theta",
    "T3": "t3",
    "Fig12": "t3",
}


def jsonable(x):
    """Recursively convert big integers to decimal strings, tuples to lists."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= SAFE_INT else x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    return x


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def digest(data) -> str:
    text = json.dumps(jsonable(data), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass
class Report:
    command: str
    digest: str
    parameters: dict
    result: object
    version: str = __version__

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "digest": self.digest,
            "parameters": self.parameters,
            "result": self.result,
            "version": self.version,
        }


@dataclass
class Input:
    """A graph plus the embedded tree used for the Morse computations."""

    graph: Graph
    tree: EmbeddedTree
    source: dict
    fixture: str | None = None

    @property
    def script(self) -> str | None:
        return FIXTURE_SCRIPTS.get(self.fixture or "")


def read_graph_file(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidGraph(f"cannot read graph file {path}: {exc}") from exc


def load_input(
    graph_file: str | None = None,
    fixture: str | None = None,
    n: int | None = None,
    strategy: str = VALENCY2_ENDS,
    subdivide: str | None = STRICT,
) -> Input:
    """Load a graph or tree JSON file, or a shipped fixture.

    A plain graph is subdivided for ``n`` (unless ``subdivide`` is None) and
    given a maximal tree by ``strategy``; a tree JSON (with a "tree_edges"
    key) and a fixture are used as they are.
    """
    from .fixtures import fixture_tree, tree_from_json, tree_to_json

    if fixture is not None:
        t = fixture_tree(fixture, n)
        return Input(t.graph, t, {"fixture": fixture, "n": n}, fixture)
    if graph_file is None:
        raise GraphBraidError("no input: give --graph or --fixture")
    data = read_graph_file(graph_file)
    if "tree_edges" in data:
        t = tree_from_json(data)
        return Input(t.graph, t, tree_to_json(t))
    g = Graph.from_json(data)
    h = subdivide_for_index(g, n, subdivide) if subdivide and n else g
    t = choose_maximal_tree(h, strategy)
    return Input(g, t, {"graph": g.to_json(), "subdivide": subdivide, "strategy": strategy, "n": n})


# ---------------------------------------------------------------------------
# cubical homology oracle


def _disjoint_edge_sets(g: Graph, k: int):
    if k == 0:
        yield ()
        return
    for es in itertools.combinations(range(len(g.edges)), k):
        ends = [v for e in es for v in g.edges[e]]
        if len(set(ends)) == 2 * k:
            yield es


def cubical_cell_count(g: Graph, n: int, dim: int) -> int:
    return sum(comb(g.vertex_count - 2 * dim, n - dim) for _ in _disjoint_edge_sets(g, dim))


def cubical_cells(g: Graph, n: int, dim: int):
    for es in _disjoint_edge_sets(g, dim):
        used = {v for e in es for v in g.edges[e]}
        free = [v for v in range(g.vertex_count) if v not in used]
        for vs in itertools.combinations(free, n - dim):
            yield es, vs


def _cubical_boundary(g: Graph, cell) -> dict:
    es, vs = cell
    out: dict = {}
    for k, e in enumerate(es):
        rest = es[:k] + es[k + 1 :]
        sign = -1 if k % 2 else 1
        a, b = g.edges[e]
        for v, s in ((b, sign), (a, -sign)):
            f = (rest, tuple(sorted(vs + (v,))))
            out[f] = out.get(f, 0) + s
    return {f: x for f, x in out.items() if x}


def oracle_cubical_homology(g: Graph, n: int, dim: int, budget: int = DEFAULT_BUDGET) -> HomologySummary:
    """H_dim of UD_n straight from the cubical chain complex."""
    if any(a == b for a, b in g.edges):
        raise InvalidGraph("loops must be subdivided before building cubes")
    dims = [d for d in (dim - 1, dim, dim + 1) if 0 <= d <= n]
    total = sum(cubical_cell_count(g, n, d) for d in dims)
    if total > budget:
        raise BudgetExceeded(f"{total} cells exceed the budget of {budget}")
    if dim < 0 or dim > n or g.vertex_count < n:
        return HomologySummary(dim, 0, [])
    cells = list(cubical_cells(g, n, dim))
    index = {c: i for i, c in enumerate(cells)}
    d_in = []
    if dim > 0:
        lower = {c: i for i, c in enumerate(cubical_cells(g, n, dim - 1))}
        d_in = [{lower[f]: x for f, x in _cubical_boundary(g, c).items()} for c in cells]
    d_out = []
    if dim < n:
        d_out = [{index[f]: x for f, x in _cubical_boundary(g, c).items()} for c in cubical_cells(g, n, dim + 1)]
    # rows here are columns of the boundary matrices; invariant factors do not care
    return homology_sparse(d_in, d_out, len(cells), dim)
