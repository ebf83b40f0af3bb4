"""Graphs, subdivision, embedded maximal trees and topological-minor search.

A :class:`Graph` is a finite multigraph.  Its optional rotation system lists,
for every vertex, the incident edge-ends in clockwise order.  Edge-end ``2*e``
is the first endpoint of edge ``e`` and ``2*e + 1`` the second one, so loops
are unambiguous.

An :class:`EmbeddedTree` is always produced by :func:`order_vertices`; its
public methods speak in *ordered labels* (0 is the base), which is also the
labelling used by cells.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    BaseNotValencyOne,
    InvalidGraph,
    NotConnected,
    NotSubdivided,
    UnknownFixture,
)

STRICT = "Strict"
MINIMAL = "Minimal"

VALENCY2_ENDS = "Valency2Ends"
BRANCH_INCIDENT = "BranchIncident"
PAPER_FIXTURE = "PaperFixture"
PLANAR_WALK = "PlanarWalk"
BOUQUET = "Bouquet"


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...] | None = None
    base: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        if self.vertex_count < 0:
            raise InvalidGraph("negative vertex count")
        for u, v in self.edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InvalidGraph(f"edge ({u},{v}) has an invalid endpoint")
        if self.rotation is not None:
            rot = tuple(tuple(int(x) for x in r) for r in self.rotation)
            object.__setattr__(self, "rotation", rot)
            if len(rot) != self.vertex_count:
                raise InvalidGraph("rotation must list every vertex")
            for v in range(self.vertex_count):
                if sorted(rot[v]) != sorted(self._default_ends(v)):
                    raise InvalidGraph(f"rotation at {v} must list each incident edge-end once")
        if self.base is not None and not 0 <= self.base < self.vertex_count:
            raise InvalidGraph("base is not a vertex")

    def _default_ends(self, v):
        ends = []
        for e, (a, b) in enumerate(self.edges):
            if a == v:
                ends.append(2 * e)
            if b == v:
                ends.append(2 * e + 1)
        return ends

    def ends_at(self, v) -> list[int]:
        """Edge-ends at ``v`` in clockwise order (input order if no rotation)."""
        if self.rotation is not None:
            return list(self.rotation[v])
        return self._default_ends(v)

    def end_vertex(self, end: int) -> int:
        return self.edges[end // 2][end % 2]

    def valency(self, v) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def valencies(self) -> list[int]:
        val = [0] * self.vertex_count
        for a, b in self.edges:
            val[a] += 1
            val[b] += 1
        return val

    def neighbors(self, v) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            if b == v and a != v:
                out.append(a)
        return out

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        todo = [0]
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == self.vertex_count

    def adjacency(self) -> list[list[int]]:
        adj = [[] for _ in range(self.vertex_count)]
        for a, b in self.edges:
            adj[a].append(b)
            if a != b:
                adj[b].append(a)
        return adj

    def is_simple(self) -> bool:
        seen = set()
        for a, b in self.edges:
            key = (min(a, b), max(a, b))
            if a == b or key in seen:
                return False
            seen.add(key)
        return True

    def betti_1(self) -> int:
        return len(self.edges) - self.vertex_count + 1

    def to_json(self) -> dict:
        out = {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}
        if self.rotation is not None:
            out["rotation"] = [list(r) for r in self.rotation]
        if self.base is not None:
            out["base"] = self.base
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        try:
            return cls(
                vertex_count=int(data["vertices"]),
                edges=tuple(tuple(e) for e in data["edges"]),
                rotation=data.get("rotation"),
                base=data.get("base"),
            )
        except (KeyError, TypeError) as exc:
            raise InvalidGraph(f"malformed graph JSON: {exc}") from exc


def require_connected(g: Graph):
    if not g.is_connected():
        raise NotConnected("graph is not connected")


# ---------------------------------------------------------------------------
# arcs and subdivision


@dataclass(frozen=True)
class Arc:
    """A maximal path whose interior vertices have valency 2."""

    start: int
    end: int
    edges: tuple[int, ...]
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_loop(self) -> bool:
        return self.start == self.end


def essential_arcs(g: Graph) -> list[Arc]:
    """Decompose ``g`` into arcs between vertices of valency other than 2.

    A component without such vertices (a cycle) yields one loop arc based at
    its smallest vertex.
    """
    val = g.valencies()
    used = [False] * len(g.edges)
    arcs = []

    def walk(v, end):
        verts = [v]
        edge_list = []
        while True:
            e = end // 2
            used[e] = True
            edge_list.append(e)
            other_end = end ^ 1
            w = g.end_vertex(other_end)
            verts.append(w)
            if val[w] != 2 or w == verts[0]:
                return Arc(verts[0], w, tuple(edge_list), tuple(verts))
            nxt = [x for x in g.ends_at(w) if x != other_end]
            end = nxt[0]

    for v in range(g.vertex_count):
        if val[v] == 2:
            continue
        for end in g.ends_at(v):
            if not used[end // 2]:
                arcs.append(walk(v, end))
    for v in range(g.vertex_count):
        for end in g.ends_at(v):
            if not used[end // 2]:
                arcs.append(walk(v, end))
    return arcs


def girth(g: Graph) -> float:
    """Length of the shortest cycle (``inf`` for forests)."""
    best = float("inf")
    adj = [[] for _ in range(g.vertex_count)]
    for e, (a, b) in enumerate(g.edges):
        if a == b:
            return 1
        adj[a].append((b, e))
        adj[b].append((a, e))
    for e, (a, b) in enumerate(g.edges):
        dist = {a: 0}
        todo = deque([a])
        while todo:
            u = todo.popleft()
            if u == b:
                break
            for w, f in adj[u]:
                if f != e and w not in dist:
                    dist[w] = dist[u] + 1
                    todo.append(w)
        if b in dist:
            best = min(best, dist[b] + 1)
    return best


def _path_bound(n: int, mode: str) -> int:
    if mode == STRICT:
        return n + 1
    if mode == MINIMAL:
        return max(n - 1, 1)
    raise ValueError(f"unknown subdivision mode {mode!r}")


def is_sufficiently_subdivided(g: Graph, n: int, mode: str = MINIMAL) -> bool:
    require_connected(g)
    bound = _path_bound(n, mode)
    for arc in essential_arcs(g):
        if not arc.is_loop and arc.length < bound:
            return False
    return girth(g) >= n + 1


def _required_lengths(arcs: Sequence[Arc], n: int, mode: str) -> list[int]:
    bound = _path_bound(n, mode)
    req = [0] * len(arcs)
    groups: dict[tuple[int, int], list[int]] = {}
    for i, arc in enumerate(arcs):
        if arc.is_loop:
            req[i] = max(arc.length, n + 1, 3)
        else:
            groups.setdefault((min(arc.start, arc.end), max(arc.start, arc.end)), []).append(i)
    for members in groups.values():
        members.sort(key=lambda i: (arcs[i].length, arcs[i].edges[0]))
        first = members[0]
        req[first] = max(arcs[first].length, bound)
        for i in members[1:]:
            r = max(arcs[i].length, bound, n + 1 - req[first])
            if req[first] == 1:
                r = max(r, 2)
            req[i] = r
    return req


def subdivide_for_index(g: Graph, n: int, mode: str = MINIMAL) -> Graph:
    """Subdivide every arc up to the length bound of ``mode`` for ``n`` particles.

    Each arc is lengthened to exactly its bound (never more), by splitting its
    last edge; original vertex ids are kept and new vertices are appended.
    """
    if n < 1:
        raise ValueError("braid index must be positive")
    require_connected(g)
    if g.is_simple() and is_sufficiently_subdivided(g, n, mode):
        return g
    arcs = essential_arcs(g)
    req = _required_lengths(arcs, n, mode)
    edges = [list(e) for e in g.edges]
    rotation = [list(g.ends_at(v)) for v in range(g.vertex_count)]
    count = g.vertex_count
    for arc, r in zip(arcs, req):
        extra = r - arc.length
        if extra <= 0:
            continue
        e = arc.edges[-1]
        a, b = edges[e]
        # the end of e sitting at the arc's final vertex
        side = 1 if b == arc.end and (a != b or len(arc.edges) == 1) else 0
        if a == b:
            side = 1
        far = edges[e][side]
        new_vertices = list(range(count, count + extra))
        count += extra
        rotation.extend([] for _ in new_vertices)
        edges[e][side] = new_vertices[0]
        rotation[new_vertices[0]].append(2 * e + side)
        chain = new_vertices + [far]
        for x, y in zip(chain, chain[1:]):
            f = len(edges)
            edges.append([x, y])
            rotation[x].append(2 * f)
            if y == far:
                rotation[far][rotation[far].index(2 * e + side)] = 2 * f + 1
            else:
                rotation[y].append(2 * f + 1)
    return Graph(count, tuple(map(tuple, edges)), tuple(map(tuple, rotation)) if g.rotation else None, g.base)


# ---------------------------------------------------------------------------
# embedded trees


@dataclass(frozen=True)
class EmbeddedTree:
    """A maximal tree with its clockwise vertex order.

    Internally everything is relabelled so that vertex ``u`` is the vertex
    numbered ``u``.  Tree edge ``u`` is the edge with initial vertex ``u``
    (``parent[u]``-``u``); deleted edge ``j`` has code ``V + j``.
    """

    graph: Graph
    tree_edges: frozenset
    deleted_edges: tuple[int, ...]
    base: int
    order: tuple[int, ...]
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    deleted: tuple[tuple[int, int], ...]
    deleted_names: tuple[str, ...]
    subtree_end: tuple[int, ...]
    name: str = ""
    labels: tuple = ()
    _adj: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        # lookup tables for the hot paths of the Morse flow
        V = len(self.order)
        ends = [(0, 0)] + [(self.parent[u], u) for u in range(1, V)] + list(self.deleted)
        object.__setattr__(self, "_V", V)
        object.__setattr__(self, "_ends", tuple(ends))

    @property
    def V(self) -> int:
        return self._V

    @property
    def label(self) -> tuple[int, ...]:
        """Inverse of ``order``: original vertex id of each number."""
        inv = [0] * self.V
        for v, k in enumerate(self.order):
            inv[k] = v
        return tuple(inv)

    def edge_codes(self) -> range:
        return range(1, self.V + len(self.deleted))

    def is_deleted(self, code: int) -> bool:
        return code >= self.V

    def tau(self, code: int) -> int:
        return self._ends[code][0]

    def iota(self, code: int) -> int:
        return self._ends[code][1]

    def ends(self, code: int) -> tuple[int, int]:
        return self._ends[code]

    def edge_name(self, code: int) -> str:
        if code >= self.V:
            return self.deleted_names[code - self.V]
        return f"{self.parent[code]}-{code}"

    def code_of_name(self, name: str) -> int:
        if name in self.deleted_names:
            return self.V + self.deleted_names.index(name)
        tau, _, iota = name.partition("-")
        iota = int(iota)
        if self.parent[iota] != int(tau):
            raise KeyError(f"{name} is not a tree edge")
        return iota

    def tree_valency(self, v: int) -> int:
        return len(self.children[v]) + (v != 0)

    def graph_valency(self, v: int) -> int:
        return self.graph.valency(self.label[v])

    def adjacent(self, v: int) -> tuple[int, ...]:
        """Neighbours of ``v`` in the graph, in ordered labels."""
        return self._adj[v]

    # tree meets -----------------------------------------------------------
    def in_subtree(self, w: int, v: int) -> bool:
        return v <= w <= self.subtree_end[v]

    def path_to_base(self, v: int) -> list[int]:
        out = [v]
        while v != 0:
            v = self.parent[v]
            out.append(v)
        return out

    def meet(self, v: int, w: int) -> int:
        """First common vertex of the tree paths from ``v`` and ``w`` to the base."""
        while not self.in_subtree(w, v):
            v = self.parent[v]
        return v

    def branch(self, v: int, w: int) -> int:
        """Clockwise index g(v, w) of the branch at ``v`` containing ``w`` (0 if none)."""
        if w == v or not self.in_subtree(w, v):
            return 0
        for k, c in enumerate(self.children[v], start=1):
            if self.in_subtree(w, c):
                return k
        return 0

    def branch_chain(self, v: int, k: int, count: int) -> list[int]:
        """The ``count`` vertices nearest ``v`` along the first-child chain of branch ``k``."""
        out = []
        u = self.children[v][k - 1]
        while len(out) < count:
            out.append(u)
            if len(out) == count:
                break
            if not self.children[u]:
                raise ValueError("branch too short")
            u = self.children[u][0]
        return out

    def label_of(self, letter: str) -> int:
        return dict(self.labels)[letter]

    def essential(self) -> list[int]:
        return [v for v in range(self.V) if self.tree_valency(v) >= 3]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "graph": self.graph.to_json(),
            "tree_edges": sorted(self.tree_edges),
            "base": self.base,
            "order": list(self.order),
            "deleted": [
                {"name": nm, "tau": t, "iota": i} for nm, (t, i) in zip(self.deleted_names, self.deleted)
            ],
        }


def _check_spanning_tree(g: Graph, tree_edges: frozenset):
    if len(tree_edges) != g.vertex_count - 1:
        raise InvalidGraph("tree edge count is not V-1")
    parent = list(range(g.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in tree_edges:
        a, b = g.edges[e]
        ra, rb = find(a), find(b)
        if ra == rb:
            raise InvalidGraph("tree edges contain a cycle")
        parent[ra] = rb


def order_vertices(
    g: Graph,
    tree_edges: Iterable[int],
    base: int,
    deleted_names: Sequence[str] | None = None,
    name: str = "",
    labels: dict | None = None,
) -> EmbeddedTree:
    """Number the vertices by a clockwise walk around a neighbourhood of the tree."""
    require_connected(g)
    tree_edges = frozenset(tree_edges)
    _check_spanning_tree(g, tree_edges)
    tree_ends = [[x for x in g.ends_at(v) if x // 2 in tree_edges] for v in range(g.vertex_count)]
    if g.vertex_count > 1 and len(tree_ends[base]) != 1:
        raise BaseNotValencyOne(f"base {base} has valency {len(tree_ends[base])} in the tree")
    order = [-1] * g.vertex_count
    order[base] = 0
    parent_orig = [-1] * g.vertex_count
    children_orig: list[list[int]] = [[] for _ in range(g.vertex_count)]
    counter = 1
    # each frame: vertex, its rotation of tree ends, start index, steps taken
    stack = [(base, tree_ends[base], 0, 0, None)]
    while stack:
        v, rot, start, step, incoming = stack.pop()
        if step >= len(rot):
            continue
        end = rot[(start + step) % len(rot)]
        stack.append((v, rot, start, step + 1, incoming))
        if end == incoming:
            continue
        w = g.end_vertex(end ^ 1)
        if order[w] != -1:
            continue
        order[w] = counter
        counter += 1
        parent_orig[w] = v
        children_orig[v].append(w)
        wrot = tree_ends[w]
        stack.append((w, wrot, (wrot.index(end ^ 1) + 1) % len(wrot), 0, end ^ 1))
    V = g.vertex_count
    parent = [-1] * V
    children: list[tuple[int, ...]] = [()] * V
    for v in range(V):
        if parent_orig[v] >= 0:
            parent[order[v]] = order[parent_orig[v]]
        children[order[v]] = tuple(order[c] for c in children_orig[v])
    subtree_end = list(range(V))
    for u in range(V - 1, 0, -1):
        p = parent[u]
        subtree_end[p] = max(subtree_end[p], subtree_end[u])
    deleted_ids = [e for e in range(len(g.edges)) if e not in tree_edges]
    pairs = []
    for e in deleted_ids:
        a, b = order[g.edges[e][0]], order[g.edges[e][1]]
        pairs.append(((min(a, b), max(a, b)), e))
    pairs.sort()
    if deleted_names is None:
        names = ["d"] if len(pairs) == 1 else [f"d{i + 1}" for i in range(len(pairs))]
    else:
        # names are given in the order of the graph's deleted edge ids
        by_id = dict(zip(deleted_ids, deleted_names))
        names = [by_id[e] for _, e in pairs]
    adj = [[] for _ in range(V)]
    for a, b in g.edges:
        adj[order[a]].append(order[b])
        adj[order[b]].append(order[a])
    return EmbeddedTree(
        graph=g,
        tree_edges=tree_edges,
        deleted_edges=tuple(e for _, e in pairs),
        base=base,
        order=tuple(order),
        parent=tuple(parent),
        children=tuple(children),
        deleted=tuple(p for p, _ in pairs),
        deleted_names=tuple(names),
        subtree_end=tuple(subtree_end),
        name=name,
        labels=tuple(sorted((k, order[v]) for k, v in (labels or {}).items())),
        _adj=tuple(tuple(sorted(set(a))) for a in adj),
    )


# ---------------------------------------------------------------------------
# maximal tree selection


def _arc_spanning_tree(g: Graph, arcs: Sequence[Arc]) -> tuple[list[int], list[int]]:
    """Split arc indices into tree arcs and non-tree arcs (deterministic)."""
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    key = sorted(range(len(arcs)), key=lambda i: (min(arcs[i].start, arcs[i].end), max(arcs[i].start, arcs[i].end), arcs[i].edges[0]))
    tree, rest = [], []
    for i in key:
        a, b = find(arcs[i].start), find(arcs[i].end)
        if a == b:
            rest.append(i)
        else:
            parent[a] = b
            tree.append(i)
    return tree, sorted(rest)


def _delete_in_arc(g: Graph, arc: Arc, strategy: str, val: Sequence[int]) -> int:
    m = arc.length
    if strategy == VALENCY2_ENDS:
        if m < 3:
            raise NotSubdivided("an arc outside the tree needs at least 3 edges for Valency2Ends")
        return arc.edges[m // 2]
    if val[arc.end] >= 3:
        return arc.edges[-1]
    if val[arc.start] >= 3:
        return arc.edges[0]
    return arc.edges[m // 2]


def choose_maximal_tree(g: Graph, strategy: str = VALENCY2_ENDS, fixture: str | None = None) -> EmbeddedTree:
    """Pick a maximal tree, a base vertex and the clockwise order.

    ``Valency2Ends`` deletes a middle edge of every arc outside an arc spanning
    tree; ``BranchIncident`` deletes the edge at an end of valency >= 3;
    ``PaperFixture`` loads a shipped fixture; ``PlanarWalk`` follows the planar
    boundary-walk construction used for braid index 2.
    """
    if strategy == PAPER_FIXTURE:
        from .fixtures import load_tree

        if fixture is None:
            raise UnknownFixture("PaperFixture needs a fixture name")
        return load_tree(fixture)
    if strategy == PLANAR_WALK:
        return planar_walk_tree(g)
    if strategy == BOUQUET:
        return bouquet_tree(g)
    if strategy not in (VALENCY2_ENDS, BRANCH_INCIDENT):
        raise ValueError(f"unknown strategy {strategy!r}")
    require_connected(g)
    if g.vertex_count == 1:
        return order_vertices(g, [], 0)
    if not g.is_simple():
        raise NotSubdivided("loops and parallel edges must be subdivided first")
    val = g.valencies()
    arcs = essential_arcs(g)
    _, rest = _arc_spanning_tree(g, arcs)
    deleted = [_delete_in_arc(g, arcs[i], strategy, val) for i in rest]
    leaves = [v for v in range(g.vertex_count) if val[v] == 1]
    if leaves:
        base = g.base if g.base is not None and val[g.base] == 1 else leaves[0]
    else:
        a, b = g.edges[deleted[0]]
        if strategy == VALENCY2_ENDS:
            base = min(a, b)
        else:
            base = a if val[a] == 2 else b
            if val[base] != 2:
                raise NotSubdivided("no valency-2 vertex available for the base")
    tree = [e for e in range(len(g.edges)) if e not in set(deleted)]
    return order_vertices(g, tree, base)


def _essential_path_end(g: Graph, arcs: Sequence[Arc], val) -> int | None:
    """An end of a longest path through branch vertices (None without any)."""
    ess = [v for v in range(g.vertex_count) if val[v] >= 3]
    if not ess:
        return None
    adj: dict[int, list[int]] = {v: [] for v in ess}
    for a in arcs:
        if not a.is_loop and val[a.start] >= 3 and val[a.end] >= 3:
            adj[a.start].append(a.end)
            adj[a.end].append(a.start)

    def farthest(src):
        dist = {src: 0}
        todo = deque([src])
        while todo:
            u = todo.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    todo.append(w)
        return max(sorted(dist), key=lambda v: dist[v])

    return farthest(farthest(min(ess)))


def bouquet_tree(g: Graph, base: int | None = None) -> EmbeddedTree:
    """Tree and order for graphs in which every circuit meets at most one branch vertex.

    Each loop at a branch vertex X becomes a branch of X closed by a deleted
    edge back to X.  At every vertex the loop branches come first and the
    branch holding the most branch vertices comes last, so that in a linear
    star-bouquet the remaining spine is always the last branch.  The base is
    a leaf at an end of the spine when one exists.
    """
    require_connected(g)
    if not g.is_simple():
        raise NotSubdivided("loops and parallel edges must be subdivided first")
    val = g.valencies()
    arcs = essential_arcs(g)
    loops = [a for a in arcs if a.is_loop]
    for a in loops:
        if a.length < 3:
            raise NotSubdivided("a loop needs at least 3 edges")
    end = _essential_path_end(g, arcs, val)
    leaves = [v for v in range(g.vertex_count) if val[v] == 1]
    loop_first: dict[int, int] = {}
    deleted = []
    if base is None and leaves:
        pick = [a for a in arcs if not a.is_loop and end is not None and end in (a.start, a.end) and 1 in (val[a.start], val[a.end])]
        if pick:
            a = pick[0]
            base = a.start if val[a.start] == 1 else a.end
        else:
            base = leaves[0]
    base_loop = None
    if base is None:
        # no leaves: open a loop next to its branch vertex and use that end
        cand = [a for a in loops if end is None or a.start == end] or loops
        base_loop = cand[0]
        base = base_loop.vertices[1]
    for a in loops:
        if a is base_loop:
            deleted.append(a.edges[1])
        else:
            deleted.append(a.edges[-1])
            loop_first[a.edges[0]] = a.start
    tree = [e for e in range(len(g.edges)) if e not in set(deleted)]
    tree_set = set(tree)
    if len(tree) != g.vertex_count - 1:
        raise InvalidGraph("some circuit passes through two branch vertices")
    # subtree weights (number of branch vertices) for the branch order
    tadj: list[list[tuple[int, int]]] = [[] for _ in range(g.vertex_count)]
    for e in tree:
        a, b = g.edges[e]
        tadj[a].append((b, 2 * e))
        tadj[b].append((a, 2 * e + 1))
    parent = {base: None}
    order = [base]
    for u in order:
        for w, _ in tadj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    if len(order) != g.vertex_count:
        raise InvalidGraph("some circuit passes through two branch vertices")
    weight = {v: int(val[v] >= 3) for v in order}
    depth = {v: 0 for v in order}
    for v in reversed(order):
        p = parent[v]
        if p is not None:
            weight[p] += weight[v]
            depth[p] = max(depth[p], depth[v] + 1)
    rotation = []
    for v in range(g.vertex_count):
        up = [end_ for w, end_ in tadj[v] if w == parent[v]]
        kids = [(w, end_) for w, end_ in tadj[v] if w != parent[v]]
        kids.sort(key=lambda x: (0 if x[1] // 2 in loop_first else 1, weight[x[0]], depth[x[0]], x[0]))
        others = [x for x in g.ends_at(v) if x // 2 not in tree_set]
        rotation.append(tuple(up + [end_ for _, end_ in kids] + others))
    g2 = Graph(g.vertex_count, g.edges, tuple(rotation), base)
    return order_vertices(g2, tree, base)


def planar_embedding_rotation(g: Graph) -> Graph | None:
    """Return ``g`` carrying a planar rotation system, or None if non-planar."""
    import networkx as nx

    G = nx.Graph()
    G.add_nodes_from(range(g.vertex_count))
    index = {}
    for e, (a, b) in enumerate(g.edges):
        G.add_edge(a, b)
        index[(a, b)] = 2 * e
        index[(b, a)] = 2 * e + 1
    ok, emb = nx.check_planarity(G)
    if not ok:
        return None
    rotation = []
    for v in range(g.vertex_count):
        rotation.append(tuple(index[(v, w)] for w in emb.neighbors_cw_order(v)) if G.degree(v) else ())
    return Graph(g.vertex_count, g.edges, tuple(rotation), g.base)


def planar_walk_tree(g: Graph) -> EmbeddedTree:
    """Maximal tree built by walking the boundary of a planar neighbourhood.

    The walk numbers vertices clockwise; whenever it numbers a valency-2 vertex
    lying on a circuit of the current tree it deletes the edge in front of it.
    Arcs are first subdivided to length at least 3.
    """
    require_connected(g)
    g = subdivide_for_index(g, 4, MINIMAL) if not all(a.length >= 3 for a in essential_arcs(g) if not a.is_loop) else g
    emb = planar_embedding_rotation(g)
    if emb is None:
        raise InvalidGraph("graph is not planar")
    g = emb
    val = g.valencies()
    alive = set(range(len(g.edges)))
    leaves = [v for v in range(g.vertex_count) if val[v] == 1]
    if leaves:
        base = leaves[0]
    else:
        base = min(v for v in range(g.vertex_count) if val[v] == 2)
        alive.discard(g.ends_at(base)[0] // 2)

    def ends(v):
        return [x for x in g.ends_at(v) if x // 2 in alive]

    def on_circuit(e):
        a, b = g.edges[e]
        seen = {a}
        todo = [a]
        while todo:
            u = todo.pop()
            for x in ends(u):
                if x // 2 == e:
                    continue
                w = g.end_vertex(x ^ 1)
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return b in seen

    numbered = {base}
    v = base
    incoming = None
    limit = 8 * (len(g.edges) + 1) ** 2
    for _ in range(limit):
        rot = ends(v)
        if not rot:
            break
        if incoming is None or incoming not in rot:
            end = rot[0]
        else:
            end = rot[(rot.index(incoming) + 1) % len(rot)]
        w = g.end_vertex(end ^ 1)
        incoming = end ^ 1
        v = w
        if w == base and len(numbered) == g.vertex_count:
            break
        if w not in numbered:
            numbered.add(w)
            if val[w] == 2:
                rot_w = ends(w)
                ahead = [x for x in rot_w if x != incoming]
                if ahead and on_circuit(ahead[0] // 2):
                    alive.discard(ahead[0] // 2)
    if len(alive) != g.vertex_count - 1:
        raise InvalidGraph("boundary walk did not produce a spanning tree")
    return order_vertices(g, alive, base)


# ---------------------------------------------------------------------------
# restrictive pairs


def detect_restrictive_pairs(t: EmbeddedTree, n: int) -> list[tuple[int, int]]:
    """Pairs (A, B) of valency >= 3 vertices joined by an (n-1)-edge arc whose
    last edge, at B, is deleted.  Reported in ordered labels."""
    g = t.graph
    val = g.valencies()
    deleted = set(t.deleted_edges)
    out = set()
    for arc in essential_arcs(g):
        if arc.is_loop or arc.length != n - 1:
            continue
        if val[arc.start] < 3 or val[arc.end] < 3:
            continue
        for first, last, e in ((arc.start, arc.end, arc.edges[-1]), (arc.end, arc.start, arc.edges[0])):
            if e in deleted:
                out.add((t.order[first], t.order[last]))
    return sorted(out)


# ---------------------------------------------------------------------------
# topological minors


@dataclass
class MinorWitness:
    branch_map: dict
    paths: list


class _Reduced:
    """Homeomorphic reduction: nodes are vertices of valency != 2."""

    def __init__(self, g: Graph):
        self.g = g
        self.arcs = essential_arcs(g)
        self.val = g.valencies()
        nodes = set()
        for arc in self.arcs:
            nodes.add(arc.start)
            nodes.add(arc.end)
        if not self.arcs:
            nodes = set(range(g.vertex_count))
        self.nodes = sorted(nodes)
        # arc-ends at each node: (arc index, side) with side 0 = start
        self.arc_ends = {v: [] for v in self.nodes}
        for i, arc in enumerate(self.arcs):
            self.arc_ends[arc.start].append((i, 0))
            self.arc_ends[arc.end].append((i, 1))

    def other(self, i, side):
        arc = self.arcs[i]
        return arc.end if side == 0 else arc.start


def _pattern_structure(p: Graph):
    red = _Reduced(p)
    branch = [v for v in red.nodes if red.val[v] >= 3]
    leaves = [v for v in red.nodes if red.val[v] == 1]
    return red, branch, leaves


def contains_subdivision(g: Graph, p: Graph, want_witness: bool = False):
    """Does some subdivision of ``p`` occur as a subgraph of a subdivision of ``g``?

    Branch vertices of ``p`` are assigned injectively, arcs between them are
    routed as internally disjoint paths by backtracking, and pendant arcs only
    need a free edge-end at their branch image.
    """
    result = _minor_search(g, p)
    if want_witness:
        return result is not None, result
    return result is not None


def _minor_search(g: Graph, p: Graph):
    if p.vertex_count == 0:
        return MinorWitness({}, [])
    if g.vertex_count == 0:
        return None
    pr, pbranch, pleaves = _pattern_structure(p)
    gr = _Reduced(g)
    if not pbranch:
        return _small_pattern(g, p, pr)
    full_arcs = []
    pendants: dict[int, int] = {}
    for i, arc in enumerate(pr.arcs):
        s_leaf = pr.val[arc.start] == 1
        e_leaf = pr.val[arc.end] == 1
        if s_leaf and e_leaf:
            return None
        if s_leaf:
            pendants[arc.end] = pendants.get(arc.end, 0) + 1
        elif e_leaf:
            pendants[arc.start] = pendants.get(arc.start, 0) + 1
        else:
            full_arcs.append((arc.start, arc.end))
    # order branch vertices by BFS over full arcs for early routing
    order = []
    adj = {v: [] for v in pbranch}
    for a, b in full_arcs:
        adj[a].append(b)
        adj[b].append(a)
    for root in pbranch:
        if root in order:
            continue
        todo = deque([root])
        order.append(root)
        while todo:
            u = todo.popleft()
            for w in sorted(adj[u]):
                if w not in order:
                    order.append(w)
                    todo.append(w)
    pdeg = {v: pr.val[v] for v in pbranch}
    candidates = [v for v in gr.nodes if gr.val[v] >= 3]
    routes_after = {}
    placed_before = {}
    for idx, v in enumerate(order):
        placed_before[v] = idx
    for k, (a, b) in enumerate(full_arcs):
        last = max(placed_before[a], placed_before[b])
        routes_after.setdefault(last, []).append(k)

    image: dict[int, int] = {}
    used_nodes: set = set()
    used_arcs: set = set()
    paths: dict[int, list] = {}

    def route(k, remaining, then):
        a, b = full_arcs[remaining[k]]
        src, dst = image[a], image[b]
        idx = remaining[k]

        def extend(v, trail_arcs, trail_nodes):
            for (i, side) in gr.arc_ends[v]:
                if i in used_arcs or i in trail_arcs:
                    continue
                w = gr.other(i, side)
                if w == dst:
                    if src == dst and not trail_arcs and gr.arcs[i].is_loop is False:
                        # a loop pattern arc needs a closed walk
                        pass
                    if src == dst and not trail_arcs and not gr.arcs[i].is_loop:
                        continue
                    used_arcs.update(trail_arcs + [i])
                    used_nodes.update(trail_nodes)
                    paths[idx] = (trail_arcs + [i], src)
                    if k + 1 < len(remaining):
                        ok = route(k + 1, remaining, then)
                    else:
                        ok = then()
                    if ok:
                        return True
                    used_arcs.difference_update(trail_arcs + [i])
                    used_nodes.difference_update(trail_nodes)
                    del paths[idx]
                    continue
                if w == src or w in used_nodes or w in trail_nodes or w in image.values():
                    continue
                if gr.val[w] < 2:
                    continue
                if extend(w, trail_arcs + [i], trail_nodes + [w]):
                    return True
            return False

        return extend(src, [], [])

    def pendants_ok():
        for v, count in pendants.items():
            x = image[v]
            free = sum(1 for (i, side) in gr.arc_ends[x] if i not in used_arcs)
            if free < count:
                return False
        return True

    def place(idx):
        if idx == len(order):
            return pendants_ok()
        v = order[idx]
        for x in candidates:
            if x in used_nodes or x in image.values() or gr.val[x] < pdeg[v]:
                continue
            image[v] = x
            todo = routes_after.get(idx, [])
            if todo:
                ok = route(0, todo, lambda: place(idx + 1))
            else:
                ok = place(idx + 1)
            if ok:
                return True
            del image[v]
        return False

    if not place(0):
        return None
    witness_paths = []
    for k, (a, b) in enumerate(full_arcs):
        arc_ids, src = paths[k]
        witness_paths.append(_expand(gr, arc_ids, src))
    used_end = set()
    for v, count in pendants.items():
        x = image[v]
        for (i, side) in gr.arc_ends[x]:
            if count == 0:
                break
            if i in used_arcs or (i, side) in used_end:
                continue
            used_end.add((i, side))
            verts = gr.arcs[i].vertices if side == 0 else gr.arcs[i].vertices[::-1]
            witness_paths.append([verts[0], verts[1]])
            count -= 1
    return MinorWitness(dict(image), witness_paths)


def _expand(gr: _Reduced, arc_ids, src):
    verts = [src]
    cur = src
    for i in arc_ids:
        arc = gr.arcs[i]
        seq = arc.vertices if arc.start == cur else arc.vertices[::-1]
        verts.extend(seq[1:])
        cur = seq[-1]
    return verts


def _small_pattern(g: Graph, p: Graph, pr: _Reduced):
    if len(p.edges) == 0:
        return MinorWitness({0: 0}, [])
    if p.betti_1() == 0:
        # a path: g needs one edge
        return MinorWitness({}, [list(g.edges[0])]) if g.edges else None
    return MinorWitness({}, []) if girth(g) < float("inf") else None


def t0_pattern() -> Graph:
    """The smallest non-linear tree: a centre joined to three vertices, each with two leaves."""
    edges = [(0, 1), (0, 2), (0, 3)]
    for x, leaves in ((1, (4, 5)), (2, (6, 7)), (3, (8, 9))):
        edges.extend((x, leaf) for leaf in leaves)
    return graph_from_edges(edges, 10)


def s0_pattern() -> Graph:
    """A circle through two branch vertices, each carrying one hair."""
    return graph_from_edges([(0, 1), (1, 2), (2, 0), (0, 3), (1, 4)], 5)


def contains_t0(g: Graph) -> bool:
    return contains_subdivision(g, t0_pattern())


def contains_s0(g: Graph) -> bool:
    return contains_subdivision(g, s0_pattern())


def is_planar(g: Graph) -> bool:
    """Planarity verdict (networkx's left-right test)."""
    import networkx as nx

    G = nx.MultiGraph()
    G.add_nodes_from(range(g.vertex_count))
    G.add_edges_from(g.edges)
    ok, _ = nx.check_planarity(nx.Graph(G))
    return ok


# ---------------------------------------------------------------------------
# small constructors used by fixtures and tests


def graph_from_edges(edges: Sequence[tuple[int, int]], vertex_count: int | None = None) -> Graph:
    if vertex_count is None:
        vertex_count = 1 + max(max(e) for e in edges) if edges else 1
    return Graph(vertex_count, tuple(tuple(e) for e in edges))


def complete_graph(k: int) -> Graph:
    return graph_from_edges(list(itertools.combinations(range(k), 2)), k)


def complete_bipartite(a: int, b: int) -> Graph:
    return graph_from_edges([(i, a + j) for i in range(a) for j in range(b)], a + b)


def path_graph(k: int) -> Graph:
    return graph_from_edges([(i, i + 1) for i in range(k - 1)], k)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return graph_from_edges(outer + spokes + inner, 10)


def wheel_graph(spokes: int) -> Graph:
    rim = [(1 + i, 1 + (i + 1) % spokes) for i in range(spokes)]
    return graph_from_edges([(0, 1 + i) for i in range(spokes)] + rim, spokes + 1)
