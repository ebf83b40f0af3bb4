"""Shipped example graphs with their maximal trees and vertex orders.

Every fixture is built with its vertices already numbered in clockwise
order, so rotation systems list the edge to the parent first and the child
edges in increasing order.  :func:`fixture_tree` rebuilds the tree and checks
that the boundary walk reproduces that numbering.

Parametric families take the braid index ``n``; the fixed figures are also
stored as JSON files next to this module.
"""

from __future__ import annotations

import json
from importlib import resources

from ..errors import UnknownFixture
from ..graph_model import EmbeddedTree, Graph, order_vertices


class _Builder:
    def __init__(self, name):
        self.name = name
        self.tree: list[tuple[int, int]] = []
        self.deleted: list[tuple[int, int]] = []
        self.deleted_names: list[str] = []
        self.count = 1
        self.labels: dict[str, int] = {}

    def fresh(self) -> int:
        v = self.count
        self.count += 1
        return v

    def chain(self, start: int, length: int) -> int:
        """Append a path of ``length`` new vertices below ``start``; return its end."""
        u = start
        for _ in range(length):
            w = self.fresh()
            self.tree.append((u, w))
            u = w
        return u

    def delete(self, a: int, b: int, name: str):
        self.deleted.append((a, b))
        self.deleted_names.append(name)

    def build(self) -> EmbeddedTree:
        V = self.count
        edges = self.tree + self.deleted
        children = {v: [] for v in range(V)}
        up = {}
        for e, (p, c) in enumerate(self.tree):
            children[p].append((c, 2 * e))
            up[c] = 2 * e + 1
        other = {v: [] for v in range(V)}
        for j, (a, b) in enumerate(self.deleted):
            e = len(self.tree) + j
            other[a].append(2 * e)
            other[b].append(2 * e + 1)
        rotation = []
        for v in range(V):
            r = [up[v]] if v in up else []
            r.extend(end for _, end in sorted(children[v]))
            r.extend(other[v])
            rotation.append(tuple(r))
        g = Graph(V, tuple(edges), tuple(rotation), 0)
        tree_ids = range(len(self.tree))
        t = order_vertices(g, tree_ids, 0, self.deleted_names, name=self.name, labels=self.labels)
        if t.order != tuple(range(V)):
            raise AssertionError(f"fixture {self.name} numbering drifted")
        return t


def s0_fig3() -> EmbeddedTree:
    """Circle with two hairs, braid index 2."""
    b = _Builder("S0_n2")
    b.count = 5
    b.tree = [(0, 1), (1, 2), (1, 3), (3, 4)]
    b.delete(2, 3, "d")
    return b.build()


def s0(n: int) -> EmbeddedTree:
    """Circle with two hairs: base hair, arc to A, a hair and an arc closed by d at A."""
    if n <= 2:
        return s0_fig3()
    b = _Builder(f"S0_n{n}")
    tau = b.chain(0, n - 1)
    A = b.chain(tau, n - 1)
    b.chain(A, n - 1)
    iota = b.chain(A, n - 1)
    b.delete(tau, iota, "d")
    b.labels = {"A": A}
    return b.build()


def theta(n: int) -> EmbeddedTree:
    """Theta graph: base on the first arc next to Z, tree branching at Y."""
    b = _Builder(f"Theta_n{n}")
    length = max(n - 1, 1)
    Y = b.chain(0, length)
    Z = b.chain(Y, length)
    w = b.chain(Y, length)
    b.delete(0, Z, "d1")
    b.delete(Z, w, "d2")
    b.labels = {"Y": Y, "Z": Z}
    return b.build()


def t_family(loops: int, n: int) -> EmbeddedTree:
    """T_0 with ``loops`` of its three leaf pairs replaced by cycles.

    A center joined to three valency-3 vertices X1, X2, X3.  X1 carries the
    base; a cycle at X_i is closed by a deleted edge ending at X_i.
    """
    arc = max(n - 1, 1)
    loop = max(n, 2)
    b = _Builder(f"T{loops}_n{n}")
    if loops == 3:
        X1 = b.chain(0, loop)
        b.delete(0, X1, "d1")
        C = b.chain(X1, arc)
        names = ["d2", "d3"]
        kinds = ["loop", "loop"]
    else:
        X1 = b.chain(0, arc)
        b.chain(X1, arc)
        C = b.chain(X1, arc)
        names = [f"d{i + 1}" for i in range(loops)]
        kinds = ["leaves"] * (2 - loops) + ["loop"] * loops
        kinds = kinds[::-1] if loops else kinds
    labels = {"X1": X1, "C": C}
    for i, kind in enumerate(kinds):
        X = b.chain(C, arc)
        labels[f"X{i + 2}"] = X
        if kind == "loop":
            end = b.chain(X, loop)
            b.delete(X, end, names.pop(0))
        else:
            b.chain(X, arc)
            b.chain(X, arc)
    if loops == 3:
        labels["A"] = C
    b.labels = labels
    t = b.build()
    return t


def t0(n: int) -> EmbeddedTree:
    return t_family(0, n)


def t1(n: int) -> EmbeddedTree:
    return t_family(1, n)


def t2(n: int) -> EmbeddedTree:
    return t_family(2, n)


def t3(n: int) -> EmbeddedTree:
    return t_family(3, n)


def fig15() -> EmbeddedTree:
    """Two deleted edges meeting branches at A (valency 3) and B (valency 4)."""
    b = _Builder("Fig15")
    b.count = 7
    # 0 - A=1 ; A's branch 1 leads to B=2 with three leaf children 3,4,5 ;
    # A's branch 2 is the leaf 6
    b.tree = [(0, 1), (1, 2), (2, 3), (2, 4), (2, 5), (1, 6)]
    b.delete(4, 6, "d")
    b.delete(3, 5, "d'")
    b.labels = {"A": 1, "B": 2}
    return b.build()


def k4(n: int = 2) -> EmbeddedTree:
    from ..graph_model import complete_graph, subdivide_for_index, choose_maximal_tree

    g = subdivide_for_index(complete_graph(4), max(n, 4), "Minimal")
    return choose_maximal_tree(g, "Valency2Ends")


def _reading(name, kedges, kv, tree, base_arc, rots, n, rename=None):
    """Subdivide a small graph: tree arcs get n-1 edges, other arcs n+1 with the
    middle edge deleted, so both ends of each deleted edge have valency two.

    On the base arc the deleted edge is placed n-1 edges away from the branch
    vertex instead.  ``rots[v]`` lists the arcs at branch vertex v in clockwise order (as
    positions among its incident arcs); ``base_arc`` = (arc, end) puts the
    base next to that end.  Branch vertices are lettered A, B, ... in order.
    """
    lt, ld = max(n - 1, 1), max(n + 1, 3)
    V = kv
    edges, tree_ids, deleted = [], [], []
    first_end = {}
    base = None
    for i, (a, b) in enumerate(kedges):
        length = lt if i in tree else ld
        cut = length // 2
        if i == base_arc[0]:
            # keep n-1 edges between the base and its branch vertex
            cut = n - 1 if base_arc[1] == a else length - n
        path = [a] + list(range(V, V + length - 1)) + [b]
        V += length - 1
        for j in range(length):
            e = len(edges)
            edges.append((path[j], path[j + 1]))
            if j == 0:
                first_end[(i, a)] = 2 * e
            if j == length - 1:
                first_end[(i, b)] = 2 * e + 1
            if i in tree or j != cut:
                tree_ids.append(e)
            else:
                deleted.append(e)
        if i == base_arc[0]:
            base = path[cut] if base_arc[1] == a else path[cut + 1]
    rotation = [[] for _ in range(V)]
    for v in range(kv):
        inc = [i for i, e in enumerate(kedges) if v in e]
        rotation[v] = [first_end[(inc[p], v)] for p in rots[v]]
    for e, (a, b) in enumerate(edges):
        if a >= kv:
            rotation[a].append(2 * e)
        if b >= kv:
            rotation[b].append(2 * e + 1)
    g = Graph(V, tuple(edges), tuple(tuple(r) for r in rotation), base)
    t = order_vertices(g, tree_ids, base, name=name)
    branch = sorted(range(kv), key=lambda v: t.order[v])
    labels = {chr(ord("A") + k): v for k, v in enumerate(branch)}
    names = None
    if rename:
        by_code = {t.code_of_name(old): new for old, new in rename.items()}
        names = [by_code[t.V + t.deleted_edges.index(e)] for e in deleted]
    return order_vertices(g, tree_ids, base, names, name=name, labels=labels)


def k33(n: int = 2) -> EmbeddedTree:
    """K_{3,3} with the double-star tree on one edge; the two centres are B and C."""
    kedges = [(i, 3 + j) for i in range(3) for j in range(3)]
    tree = {0, 1, 2, 3, 6}
    rots = [(0, 1, 2)] * 3 + [(0, 2, 1)] + [(0, 1, 2)] * 2
    return _reading(f"K33_n{n}", kedges, 6, tree, (4, 1), rots, n)


def k5(n: int = 2) -> EmbeddedTree:
    """K_5 with a star tree centred at B; the base sits on an arc at A."""
    kedges = [(a, b) for a in range(5) for b in range(a + 1, 5)]
    tree = {kedges.index(e) for e in [(0, 1), (1, 2), (1, 3), (1, 4)]}
    rots = [(0, 2, 1, 3), (0, 1, 3, 2), (0, 1, 2, 3), (0, 1, 2, 3), (0, 1, 2, 3)]
    rename = {"d4": "d1", "d6": "d3", "d2": "d5", "d3": "d6", "d1": "d2", "d5": "d4"}
    return _reading(f"K5_n{n}", kedges, 5, tree, (kedges.index((0, 2)), 0), rots, n, rename)


_FAMILIES = {
    "S0": s0,
    "Theta": theta,
    "T0": t0,
    "T1": t1,
    "T2": t2,
    "T3": t3,
    "K4": k4,
    "K33": k33,
    "K5": k5,
}

_FIXED = {
    "Fig3": lambda n=2: s0_fig3(),
    "Fig15": lambda n=2: fig15(),
}

# figure names accepted as aliases for (family, braid index)
_FIGURES = {
    "Fig2": ("S0", 4),
    "Fig13": ("S0", 4),
    "Fig14": ("Theta", 4),
    "Fig11": ("T2", 3),
    "Fig12": ("T3", 4),
    "Fig25": ("K33", 2),
    "Fig26": ("K5", 2),
}


def fixture_names() -> list[str]:
    return sorted(set(_FAMILIES) | set(_FIXED) | set(_FIGURES) | set(_json_names()))


def _json_names() -> list[str]:
    try:
        files = resources.files(__name__)
    except (ModuleNotFoundError, TypeError):
        return []
    return [p.name[:-5] for p in files.iterdir() if p.name.endswith(".json")]


def load_json_tree(name: str) -> EmbeddedTree:
    data = json.loads(resources.files(__name__).joinpath(name + ".json").read_text())
    return tree_from_json(data)


def tree_from_json(data: dict) -> EmbeddedTree:
    g = Graph.from_json(data["graph"])
    names = data.get("deleted_names")
    return order_vertices(
        g, data["tree_edges"], data["base"], names, name=data.get("name", ""), labels=data.get("labels")
    )


def tree_to_json(t: EmbeddedTree) -> dict:
    deleted_ids = [e for e in range(len(t.graph.edges)) if e not in t.tree_edges]
    by_edge = dict(zip(t.deleted_edges, t.deleted_names))
    return {
        "name": t.name,
        "graph": t.graph.to_json(),
        "tree_edges": sorted(t.tree_edges),
        "base": t.base,
        "deleted_names": [by_edge[e] for e in deleted_ids],
        "labels": {k: t.label[v] for k, v in t.labels},
    }


def fixture_tree(name: str, n: int | None = None) -> EmbeddedTree:
    """Look up a fixture by family name (with braid index) or figure name."""
    if name in _FIGURES:
        fam, default_n = _FIGURES[name]
        return _FAMILIES[fam](default_n)
    if name in _FIXED:
        return _FIXED[name]()
    if name in _FAMILIES:
        if n is None:
            raise UnknownFixture(f"fixture {name} needs a braid index")
        return _FAMILIES[name](n)
    if name in _json_names():
        return load_json_tree(name)
    raise UnknownFixture(f"unknown fixture {name!r}")


def load_tree(name: str, n: int | None = None) -> EmbeddedTree:
    return fixture_tree(name, n)


def fixture_labels(name: str, n: int | None = None) -> dict:
    """Letter names of special vertices (ordered labels) for a fixture."""
    return dict(fixture_tree(name, n).labels)
