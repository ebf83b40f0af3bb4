"""Mod 2 cohomology rings of configuration spaces of graphs without S0.

With the canonical bouquet tree the Morse boundary vanishes, so every
critical cell c gives a class whose cubical representative is the sum of
all cells a with V~(a) = c.  Those cells have a closed description (same
edges, same vertex count in each component of the graph minus the closed
edges), which makes cup products a finite cell-sum.  Results are expressed
in the critical-cell basis by pairing with the cycles of the gradient flow.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .config_complex import Cell, cell_name, critical_cells, matching_W, occupied, classify, REDUNDANT
from .errors import BasisExpressionFailed, PreconditionS0
from .exact_algebra import Lattice
from .graph_model import EmbeddedTree, contains_s0
from .morse_engine import face


@dataclass(frozen=True)
class Z2Cochain:
    dimension: int
    support: frozenset

    def __add__(self, other: "Z2Cochain") -> "Z2Cochain":
        if other.dimension != self.dimension:
            raise ValueError("cochains of different dimensions")
        return Z2Cochain(self.dimension, self.support ^ other.support)

    def __bool__(self):
        return bool(self.support)


# ---------------------------------------------------------------------------
# the closed support formula

_S0_CACHE: dict = {}


def _require_no_s0(t: EmbeddedTree):
    key = id(t.graph)
    hit = _S0_CACHE.get(key)
    if hit is None or hit[0] is not t.graph:
        hit = (t.graph, contains_s0(t.graph))
        _S0_CACHE[key] = hit
    if hit[1]:
        raise PreconditionS0("the closed cocycle formula needs a graph without S0")


def _ordered_edges(t: EmbeddedTree) -> list[tuple[int, int]]:
    return [(t.parent[v], v) for v in range(1, t.V)] + list(t.deleted)


def components_off(t: EmbeddedTree, edges: Iterable[int]) -> list[int]:
    """Component id of each vertex in the graph minus the closures of ``edges`` (-1 if removed)."""
    gone = set()
    for e in edges:
        gone.update(t.ends(e))
    comp = [-1] * t.V
    adj: list[list[int]] = [[] for _ in range(t.V)]
    for a, b in _ordered_edges(t):
        if a not in gone and b not in gone:
            adj[a].append(b)
            adj[b].append(a)
    k = 0
    for v in range(t.V):
        if v in gone or comp[v] >= 0:
            continue
        comp[v] = k
        todo = [v]
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if comp[w] < 0:
                    comp[w] = k
                    todo.append(w)
        k += 1
    return comp


def _signature(t: EmbeddedTree, c: Cell, comp: Sequence[int]) -> tuple:
    counts: dict = {}
    for v in c.vertices:
        counts[comp[v]] = counts.get(comp[v], 0) + 1
    return tuple(sorted(counts.items()))


def cocycle_rep(t: EmbeddedTree, c: Cell, check: bool = True) -> Z2Cochain:
    """All cells with the edges of ``c`` and its vertex counts per component."""
    if check:
        _require_no_s0(t)
    comp = components_off(t, c.edges)
    members: dict = {}
    for v in range(t.V):
        if comp[v] >= 0:
            members.setdefault(comp[v], []).append(v)
    groups = []
    for k, m in _signature(t, c, comp):
        groups.append(list(itertools.combinations(members[k], m)))
    support = set()
    for pick in itertools.product(*groups):
        vs = tuple(sorted(v for part in pick for v in part))
        support.add(Cell(c.edges, vs))
    return Z2Cochain(c.dim, frozenset(support))


def same_class(t: EmbeddedTree, a: Cell, c: Cell) -> bool:
    """Whether ``a`` lies in the support of the representative of ``c``."""
    if a.edges != c.edges:
        return False
    comp = components_off(t, c.edges)
    return _signature(t, a, comp) == _signature(t, c, comp)


# ---------------------------------------------------------------------------
# coboundaries and the gradient flow over GF(2)


def cofaces(t: EmbeddedTree, c: Cell) -> list[Cell]:
    """Cells having ``c`` as a codimension-one face."""
    occ = occupied(t, c)
    out = []
    for v in c.vertices:
        rest = [x for x in c.vertices if x != v]
        blocked = occ - {v}
        for e in t.edge_codes():
            a, b = t.ends(e)
            if v not in (a, b):
                continue
            w = b if a == v else a
            if w in blocked:
                continue
            edges = tuple(sorted(c.edges + (e,), key=t.iota))
            out.append(Cell(edges, tuple(rest)))
    return out


def coboundary(t: EmbeddedTree, x: Z2Cochain) -> Z2Cochain:
    acc: set = set()
    for c in x.support:
        for p in cofaces(t, c):
            acc ^= {p}
    return Z2Cochain(x.dimension + 1, frozenset(acc))


def _faces(t: EmbeddedTree, c: Cell) -> list[Cell]:
    return [face(t, c, k, end) for k in range(c.dim) for end in ("iota", "tau")]


def flow_cycle(t: EmbeddedTree, q: Cell, limit: int = 100_000) -> frozenset:
    """Stable image of a critical cell under the mod 2 gradient flow.

    The flow is x -> x + dW(x) + W(dx) with W the upward matching; when the
    Morse boundary vanishes its limit is a cycle whose pairing with the
    representative of q* is 1 and with the others 0.
    """

    def W(chain):
        out: set = set()
        for c in chain:
            if classify(t, c).tag == REDUNDANT:
                out ^= {matching_W(t, c)}
        return out

    def d(chain):
        out: set = set()
        for c in chain:
            for f in _faces(t, c):
                out ^= {f}
        return out

    x = {q}
    for _ in range(limit):
        nxt = set(x) ^ d(W(x)) ^ W(d(x))
        if nxt == x:
            return frozenset(x)
        x = nxt
    raise BasisExpressionFailed("gradient flow did not stabilise")


_FLOW_CACHE: dict = {}


def _flow(t: EmbeddedTree, q: Cell) -> frozenset:
    key = (id(t), q)
    hit = _FLOW_CACHE.get(key)
    if hit is None or hit[0] is not t:
        hit = (t, flow_cycle(t, q))
        _FLOW_CACHE[key] = hit
    return hit[1]


def express(t: EmbeddedTree, x: Z2Cochain, n: int) -> frozenset:
    """Critical cells q with [x] = sum of [q*], by pairing with the flow cycles."""
    if coboundary(t, x).support:
        raise BasisExpressionFailed("cochain is not a cocycle")
    out = set()
    for q in critical_cells(t, n, x.dimension):
        if len(_flow(t, q) & x.support) % 2:
            out.add(q)
    return frozenset(out)


def is_coboundary(t: EmbeddedTree, x: Z2Cochain, n: int) -> bool:
    return not express(t, x, n)


# ---------------------------------------------------------------------------
# cup products


def _closures_meet(t: EmbeddedTree, c: Cell, c2: Cell) -> bool:
    ends = set()
    for e in c.edges:
        ends.update(t.ends(e))
    return any(x in ends for e in c2.edges for x in t.ends(e))


def cup_cochain(t: EmbeddedTree, c: Cell, c2: Cell, n: int) -> Z2Cochain:
    """The cell-sum representative of the product of the classes of c and c2."""
    _require_no_s0(t)
    dim = c.dim + c2.dim
    if _closures_meet(t, c, c2) or set(c.edges) & set(c2.edges):
        return Z2Cochain(dim, frozenset())
    edges = tuple(sorted(c.edges + c2.edges, key=t.iota))
    ends = set()
    for e in edges:
        ends.update(t.ends(e))
    free = [v for v in range(t.V) if v not in ends]
    comp1 = components_off(t, c.edges)
    comp2 = components_off(t, c2.edges)
    sig1 = _signature(t, c, comp1)
    sig2 = _signature(t, c2, comp2)
    out = set()
    for vs in itertools.combinations(free, n - dim):
        # faces keeping the edges of c replace those of c2 by an end; both ends
        # lie in one component, so one choice of end decides the condition
        a = tuple(sorted(vs + tuple(t.tau(e) for e in c2.edges)))
        if _signature(t, Cell(c.edges, a), comp1) != sig1:
            continue
        b = tuple(sorted(vs + tuple(t.iota(e) for e in c.edges)))
        if _signature(t, Cell(c2.edges, b), comp2) != sig2:
            continue
        out.add(Cell(edges, vs))
    return Z2Cochain(dim, frozenset(out))


def cup(t: EmbeddedTree, c: Cell, c2: Cell, n: int) -> frozenset:
    """[c*] u [c2*] as a set of critical cells (empty set = zero)."""
    x = cup_cochain(t, c, c2, n)
    if not x.support:
        return frozenset()
    return express(t, x, n)


def cup_classes(t: EmbeddedTree, xs: Iterable[Cell], ys: Iterable[Cell], n: int) -> frozenset:
    """Product of two sums of basis classes (bilinear over GF(2))."""
    acc: set = set()
    for x in xs:
        for y in ys:
            acc ^= set(cup(t, x, y, n))
    return frozenset(acc)


def vanishing_precheck(t: EmbeddedTree, c: Cell, c2: Cell) -> bool:
    """True when a sufficient condition for a zero product holds.

    Besides overlapping closures and an edge whose ends the other support
    never reaches, the per-component vertex counts demanded by both
    supports are tested for compatibility (a small transportation problem).
    """
    if _closures_meet(t, c, c2) or set(c.edges) & set(c2.edges):
        return True
    for u, w in ((c, c2), (c2, c)):
        comp = components_off(t, u.edges)
        counts = dict(_signature(t, u, comp))
        for e in w.edges:
            if all(comp[x] >= 0 and counts.get(comp[x], 0) == 0 for x in t.ends(e)):
                return True
    return not _counts_feasible(t, c, c2)


def _counts_feasible(t: EmbeddedTree, c: Cell, c2: Cell) -> bool:
    import networkx as nx

    comp1 = components_off(t, c.edges)
    comp2 = components_off(t, c2.edges)
    need1 = dict(_signature(t, c, comp1))
    need2 = dict(_signature(t, c2, comp2))
    for e in c2.edges:
        k = comp1[t.tau(e)]
        need1[k] = need1.get(k, 0) - 1
    for e in c.edges:
        k = comp2[t.iota(e)]
        need2[k] = need2.get(k, 0) - 1
    if any(v < 0 for v in need1.values()) or any(v < 0 for v in need2.values()):
        return False
    total = sum(need1.values())
    if total != sum(need2.values()):
        return False
    ends = set()
    for e in c.edges + c2.edges:
        ends.update(t.ends(e))
    g = nx.DiGraph()
    for k, v in need1.items():
        g.add_edge("s", ("K", k), capacity=v)
    for k, v in need2.items():
        g.add_edge(("L", k), "t", capacity=v)
    for v in range(t.V):
        if v in ends:
            continue
        a, b = ("K", comp1[v]), ("L", comp2[v])
        cap = g[a][b]["capacity"] + 1 if g.has_edge(a, b) else 1
        g.add_edge(a, b, capacity=cap)
    if total == 0:
        return True
    if "s" not in g or "t" not in g:
        return False
    return nx.maximum_flow_value(g, "s", "t") == total


# ---------------------------------------------------------------------------
# cup graphs


@dataclass
class CupGraph:
    vertices: list[str]
    edges: list[tuple[int, int]]

    def __post_init__(self):
        self.edges = sorted({(min(a, b), max(a, b)) for a, b in self.edges if a != b})

    def adjacency(self) -> list[set]:
        adj = [set() for _ in self.vertices]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def triangles(self) -> list[tuple[int, int, int]]:
        adj = self.adjacency()
        out = []
        for a, b in self.edges:
            for c in sorted(adj[a] & adj[b]):
                if c > b:
                    out.append((a, b, c))
        return out

    @property
    def triangle_count(self) -> int:
        return len(self.triangles())

    def isolated(self) -> list[int]:
        adj = self.adjacency()
        return [i for i in range(len(self.vertices)) if not adj[i]]

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[self.vertices[a], self.vertices[b]] for a, b in self.edges],
            "triangles": self.triangle_count,
            "isolated": len(self.isolated()),
        }


@dataclass
class FaceComplex:
    """A simplicial complex given by its faces of dimension at most 2."""

    vertices: list[str]
    faces: set = field(default_factory=set)

    def __post_init__(self):
        closed = set()
        for f in self.faces:
            f = frozenset(f)
            for k in range(1, len(f) + 1):
                closed.update(frozenset(s) for s in itertools.combinations(sorted(f), k))
        closed.update(frozenset([i]) for i in range(len(self.vertices)))
        self.faces = closed

    @classmethod
    def from_cup_graph(cls, g: CupGraph, two_faces: Iterable = ()) -> "FaceComplex":
        return cls(list(g.vertices), set(map(frozenset, g.edges)) | set(map(frozenset, two_faces)))

    def is_flag_in_degree_two(self) -> bool:
        """Every triangle of the 1-skeleton spans a 2-face."""
        edges = {f for f in self.faces if len(f) == 2}
        verts = range(len(self.vertices))
        for a, b, c in itertools.combinations(verts, 3):
            if {frozenset((a, b)), frozenset((a, c)), frozenset((b, c))} <= edges:
                if frozenset((a, b, c)) not in self.faces:
                    return False
        return True


def cup_graph(
    t: EmbeddedTree, n: int, basis: Sequence[Sequence[Cell]] | None = None, names: Sequence[str] | None = None
) -> CupGraph:
    """Degree-one classes joined when their product is nonzero.

    ``basis`` lists each class as a set of critical 1-cells (default: the
    critical-cell basis itself).
    """
    if basis is None:
        basis = [(c,) for c in critical_cells(t, n, 1)]
    if names is None:
        names = ["+".join(cell_name(t, c) for c in b) for b in basis]
    edges = []
    for i, j in itertools.combinations(range(len(basis)), 2):
        if cup_classes(t, basis[i], basis[j], n):
            edges.append((i, j))
    return CupGraph(list(names), edges)


def cup_graph_from_presentation(p) -> CupGraph:
    """Generators joined when x^y lies in the image of Phi (the dual of the cup product)."""
    from .presentations import phi_matrix

    ph = phi_matrix(p)
    lat = Lattice(ph.rows)
    edges = [pr for pr in ph.supports if lat.contains({pr: 1})]
    return CupGraph(list(p.names), edges)


def basis_change(t: EmbeddedTree, n: int, replace: dict) -> list[tuple[Cell, ...]]:
    """The critical-cell basis with some classes replaced by sums of basis classes."""
    out = []
    for c in critical_cells(t, n, 1):
        out.append(tuple(replace.get(c, (c,))))
    return out


def t2_basis_change(t: EmbeddedTree, n: int = 3) -> list[tuple[Cell, ...]]:
    """Replace [{6-12,0,7}*] by [{6-12,0,7}*] + [{6-12,7,8}*] on the T2 fixture."""
    from .config_complex import parse_cell

    a = parse_cell(t, "{6-12,0,7}")
    b = parse_cell(t, "{6-12,7,8}")
    return basis_change(t, n, {a: (a, b)})


@dataclass
class TriangleVerdict:
    certificate: bool
    triangles: int
    h3_rank: int

    @property
    def verdict(self) -> str:
        return "NotRAAG" if self.certificate else "Inconclusive"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "triangles": self.triangles, "h3_rank": self.h3_rank}


def flag_and_triangle_check(l: CupGraph, h3_rank: int) -> TriangleVerdict:
    tri = l.triangle_count
    return TriangleVerdict(tri != h3_rank, tri, h3_rank)
