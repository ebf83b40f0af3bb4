"""Cells of the discrete configuration space and the discrete Morse matching.

Cells are expressed in the ordered labels of an :class:`EmbeddedTree`.
Edges are integer codes (see :mod:`graph_model`).  A cell keeps its edges
sorted by initial vertex and its vertices sorted ascending, which is the
canonical form every other module relies on.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, NamedTuple

from .errors import (
    EdgeNotInCell,
    InconsistentNotation,
    TooFewVertices,
    VertexNotInCell,
)
from .graph_model import EmbeddedTree

CRITICAL = "Critical"
COLLAPSIBLE = "Collapsible"
REDUNDANT = "Redundant"


class _Void:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Void"

    def __bool__(self):
        return False


VOID = _Void()


class Cell(NamedTuple):
    # a tuple so that hashing and ordering stay in C on the hot paths
    edges: tuple[int, ...]
    vertices: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.edges)

    @property
    def n(self) -> int:
        return len(self.edges) + len(self.vertices)


@dataclass(frozen=True)
class CellClass:
    tag: str
    smallest_unblocked: int | None = None

    def __str__(self):
        if self.tag == REDUNDANT:
            return f"Redundant({self.smallest_unblocked})"
        return self.tag


def make_cell(t: EmbeddedTree, edges: Iterable[int], vertices: Iterable[int]) -> Cell:
    """Canonical cell from edge codes and vertices (closures are checked)."""
    edges = sorted(set(edges), key=t.iota)
    vertices = tuple(sorted(vertices))
    seen = set()
    for e in edges:
        for x in t.ends(e):
            if x in seen:
                raise ValueError("edge closures intersect")
            seen.add(x)
    for v in vertices:
        if v in seen:
            raise ValueError("vertex lies in the closure of another element")
        seen.add(v)
    return Cell(tuple(edges), vertices)


def occupied(t: EmbeddedTree, c: Cell) -> set:
    occ = set(c.vertices)
    ends = t._ends
    for e in c.edges:
        occ.update(ends[e])
    return occ


# ---------------------------------------------------------------------------
# names


def cell_name(t: EmbeddedTree, c: Cell) -> str:
    parts = [t.edge_name(e) for e in c.edges] + [str(v) for v in c.vertices]
    return "{" + ",".join(parts) + "}"


_TOKEN = re.compile(r"\s*([^,{}\s]+)\s*")


def parse_cell(t: EmbeddedTree, text: str) -> Cell:
    """Parse ``{6-10,0,7,11}``-style names; element order is free."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    edges, vertices = [], []
    for raw in body.split(","):
        tok = raw.strip()
        if not tok:
            continue
        if tok in t.deleted_names or "-" in tok:
            edges.append(t.code_of_name(tok))
        else:
            vertices.append(int(tok))
    return make_cell(t, edges, vertices)


# ---------------------------------------------------------------------------
# enumeration


def _edge_sets(t: EmbeddedTree, dim: int, allowed: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    codes = sorted(allowed if allowed is not None else t.edge_codes(), key=t.iota)
    out = []

    def rec(start, chosen, used):
        if len(chosen) == dim:
            out.append(tuple(chosen))
            return
        for i in range(start, len(codes)):
            a, b = t.ends(codes[i])
            if a in used or b in used:
                continue
            used.add(a)
            used.add(b)
            chosen.append(codes[i])
            rec(i + 1, chosen, used)
            chosen.pop()
            used.discard(a)
            used.discard(b)

    rec(0, [], set())
    return out


def enumerate_cells(
    t: EmbeddedTree, n: int, dim: int, predicate: Callable[[Cell], bool] | None = None
) -> Iterator[Cell]:
    """All ``dim``-cells of UD_n, ordered by (edge initial vertices, vertices)."""
    if t.V < n:
        raise TooFewVertices(f"graph has {t.V} vertices, fewer than n={n}")
    if dim < 0 or dim > n:
        return
    for es in _edge_sets(t, dim):
        used = set()
        for e in es:
            used.update(t.ends(e))
        free = [v for v in range(t.V) if v not in used]
        for vs in itertools.combinations(free, n - dim):
            c = Cell(es, vs)
            if predicate is None or predicate(c):
                yield c


def count_cells(t: EmbeddedTree, n: int, dim: int) -> int:
    from math import comb

    if dim < 0 or dim > n:
        return 0
    total = 0
    for es in _edge_sets(t, dim):
        total += comb(t.V - 2 * dim, n - dim)
    return total


# ---------------------------------------------------------------------------
# classification


def is_blocked(t: EmbeddedTree, v: int, c: Cell, occ: set | None = None) -> bool:
    if v not in c.vertices:
        raise VertexNotInCell(f"{v} is not a vertex of the cell")
    if v == 0:
        return True
    if occ is None:
        occ = occupied(t, c)
    return t.parent[v] in occ


def is_order_respecting(t: EmbeddedTree, e: int, c: Cell) -> bool:
    """A tree edge with no cell vertex on an earlier branch at its terminal vertex."""
    if e not in c.edges:
        raise EdgeNotInCell(f"edge {t.edge_name(e)} is not in the cell")
    if t.is_deleted(e):
        return False
    p = t.parent[e]
    for w in t.children[p]:
        if w >= e:
            break
        if w in c.vertices:
            return False
    return True


def _unblocked(t: EmbeddedTree, c: Cell, occ: set) -> list[int]:
    return [v for v in c.vertices if v != 0 and t.parent[v] not in occ]


def _order_respecting(t: EmbeddedTree, c: Cell) -> list[int]:
    vs = set(c.vertices)
    out = []
    for e in c.edges:
        if e >= t.V:
            continue
        for w in t.children[t.parent[e]]:
            if w >= e:
                out.append(e)
                break
            if w in vs:
                break
    return out


def classify(t: EmbeddedTree, c: Cell) -> CellClass:
    occ = occupied(t, c)
    unblocked = _unblocked(t, c, occ)
    respecting = _order_respecting(t, c)
    if not unblocked and not respecting:
        return CellClass(CRITICAL)
    bound = min(respecting) if respecting else t.V + 1
    if unblocked and unblocked[0] < bound:
        return CellClass(REDUNDANT, unblocked[0])
    return CellClass(COLLAPSIBLE)


def is_critical(t: EmbeddedTree, c: Cell) -> bool:
    return classify(t, c).tag == CRITICAL


def matching_W(t: EmbeddedTree, c: Cell):
    """Replace the smallest unblocked vertex of a redundant cell by its tree edge."""
    k = classify(t, c)
    if k.tag != REDUNDANT:
        return VOID
    v = k.smallest_unblocked
    rest = tuple(x for x in c.vertices if x != v)
    return Cell(tuple(sorted(c.edges + (v,), key=t.iota)), rest)


def inverse_W(t: EmbeddedTree, c: Cell):
    """The redundant cell paired with a collapsible cell."""
    if classify(t, c).tag != COLLAPSIBLE:
        return VOID
    # the paired edge is the order-respecting edge whose removal gives a
    # redundant cell whose smallest unblocked vertex is its initial vertex
    for e in _order_respecting(t, c):
        d = Cell(tuple(x for x in c.edges if x != e), tuple(sorted(c.vertices + (e,))))
        k = classify(t, d)
        if k.tag == REDUNDANT and k.smallest_unblocked == e:
            return d
    return VOID


def collapsible_by_induction(t: EmbeddedTree, c: Cell, _memo: dict | None = None) -> bool:
    """Oracle: is ``c`` the W-image of a cell that is not itself an image?

    Follows the inductive construction of W directly rather than the
    closed-form characterisation used by :func:`classify`.
    """
    memo = {} if _memo is None else _memo
    if c in memo:
        return memo[c]
    result = False
    for e in c.edges:
        if e >= t.V:
            continue
        d = Cell(tuple(x for x in c.edges if x != e), tuple(sorted(c.vertices + (e,))))
        occ = occupied(t, d)
        unb = _unblocked(t, d, occ)
        if unb and unb[0] == e and not collapsible_by_induction(t, d, memo):
            result = True
            break
    memo[c] = result
    return result


# ---------------------------------------------------------------------------
# critical cells


def critical_cells(t: EmbeddedTree, n: int, dim: int) -> list[Cell]:
    """All critical cells of a dimension, canonically ordered.

    Vertex sets are grown in increasing order, each new vertex being the base
    or a child of an already occupied vertex; this produces exactly the
    subsets with every vertex blocked.
    """
    if t.V < n:
        raise TooFewVertices(f"graph has {t.V} vertices, fewer than n={n}")
    if dim < 0 or dim > n:
        return []
    # a tree edge can only be non-order-respecting if it is not a first child
    allowed = [e for e in t.edge_codes() if e >= t.V or t.children[t.parent[e]][0] != e]
    out = []
    for es in _edge_sets(t, dim, allowed):
        ends = set()
        for e in es:
            ends.update(t.ends(e))
        need = n - dim
        vsets = []

        def rec(start, chosen, occ):
            if len(chosen) == need:
                vsets.append(tuple(chosen))
                return
            for v in range(start, t.V):
                if v in occ:
                    continue
                if v == 0 or t.parent[v] in occ:
                    occ.add(v)
                    chosen.append(v)
                    rec(v + 1, chosen, occ)
                    chosen.pop()
                    occ.discard(v)

        rec(0, [], set(ends))
        for vs in vsets:
            c = Cell(es, vs)
            if not _order_respecting(t, c):
                out.append(c)
    out.sort(key=lambda c: (tuple(t.iota(e) for e in c.edges), c.edges, c.vertices))
    return out


def sort_key(t: EmbeddedTree, c: Cell):
    return (tuple(t.iota(e) for e in c.edges), c.edges, c.vertices)


# ---------------------------------------------------------------------------
# A-notation


@dataclass(frozen=True)
class BranchTerm:
    vertex: int
    k: int
    a: tuple[int, ...]

    def label(self, name: str | None = None) -> str:
        return f"{name or self.vertex}_{self.k}({','.join(map(str, self.a))})"


@dataclass(frozen=True)
class ANotation:
    branch_terms: tuple[BranchTerm, ...]
    deleted: tuple[int, ...]
    blocked_by_deleted: tuple[int, ...]
    s: int
    # vertex stacks growing from deleted-edge ends: ((end, branch), count)
    deleted_stacks: tuple[tuple[tuple[int, int], int], ...] = field(default=())

    def text(self, t: EmbeddedTree, names: dict | None = None) -> str:
        names = names or {}
        parts = [bt.label(names.get(bt.vertex)) for bt in self.branch_terms]
        for d in self.deleted:
            parts.append(t.edge_name(d))
        if self.deleted_stacks:
            parts.extend(f"{end}.{b}^{count}" for (end, b), count in self.deleted_stacks)
        return " u ".join(parts) if parts else "0_" + str(self.s)


def _stack_root(t: EmbeddedTree, v: int, vs: set) -> tuple[int, int]:
    """Walk down from ``v`` while parents are cell vertices; return (root, below)."""
    u = v
    while u != 0 and t.parent[u] in vs:
        u = t.parent[u]
    return u, (t.parent[u] if u != 0 else -1)


def encode_a_notation(t: EmbeddedTree, c: Cell) -> ANotation:
    if not is_critical(t, c):
        raise InconsistentNotation("only critical cells have an A-notation")
    vs = set(c.vertices)
    tree_edges = [e for e in c.edges if e < t.V]
    deleted = tuple(e for e in c.edges if e >= t.V)
    by_tau = {t.parent[e]: e for e in tree_edges}
    by_iota = {e: e for e in tree_edges}
    deleted_ends = set()
    for d in deleted:
        deleted_ends.update(t.ends(d))
    counts = {e: [0] * (len(t.children[t.parent[e]])) for e in tree_edges}
    for e in tree_edges:
        counts[e][t.branch(t.parent[e], e) - 1] += 1
    s = 0
    blocked_del = []
    stacks: dict[tuple[int, int], int] = {}
    for v in c.vertices:
        root, below = _stack_root(t, v, vs)
        if root == 0:
            s += 1
        elif below in by_tau:
            e = by_tau[below]
            counts[e][t.branch(below, root) - 1] += 1
        elif below in by_iota:
            e = below
            counts[e][t.branch(t.parent[e], e) - 1] += 1
        elif below in deleted_ends:
            blocked_del.append(v)
            key = (below, t.branch(below, root))
            stacks[key] = stacks.get(key, 0) + 1
        else:
            raise InconsistentNotation(f"vertex {v} has no blocking element")
    # the 0_s block must be exactly {0..s-1}
    if s and tuple(sorted(x for x in c.vertices if _stack_root(t, x, vs)[0] == 0)) != tuple(range(s)):
        raise InconsistentNotation("base stack is not an initial segment")
    terms = tuple(
        BranchTerm(t.parent[e], t.branch(t.parent[e], e), tuple(counts[e])) for e in tree_edges
    )
    return ANotation(terms, deleted, tuple(blocked_del), s, tuple(sorted(stacks.items())))


def _chain_from(t: EmbeddedTree, start: int, count: int, occ: set) -> list[int]:
    """``count`` vertices stacked consecutively starting at ``start``."""
    out = []
    u = start
    while len(out) < count:
        if u in occ:
            raise InconsistentNotation("stack runs into an occupied vertex")
        out.append(u)
        if len(out) == count:
            break
        if not t.children[u]:
            raise InconsistentNotation("branch capacity exceeded")
        u = t.children[u][0]
    return out


def decode_a_notation(a: ANotation, t: EmbeddedTree, n: int) -> Cell:
    edges = []
    occ = set()
    for d in a.deleted:
        edges.append(d)
        occ.update(t.ends(d))
    vertices = []
    for bt in a.branch_terms:
        kids = t.children[bt.vertex]
        if not 1 <= bt.k <= len(kids) or len(bt.a) != len(kids):
            raise InconsistentNotation("branch index out of range")
        if bt.a[bt.k - 1] < 1:
            raise InconsistentNotation("edge branch needs a positive count")
        e = kids[bt.k - 1]
        edges.append(e)
        occ.update((bt.vertex, e))
    for bt in a.branch_terms:
        kids = t.children[bt.vertex]
        for i, count in enumerate(bt.a, start=1):
            if i == bt.k:
                e = kids[i - 1]
                if count - 1 > 0:
                    if not t.children[e]:
                        raise InconsistentNotation("branch capacity exceeded")
                    chain = _chain_from(t, t.children[e][0], count - 1, occ)
                else:
                    chain = []
            else:
                chain = _chain_from(t, kids[i - 1], count, occ) if count else []
            occ.update(chain)
            vertices.extend(chain)
    for (end, b), count in a.deleted_stacks:
        if not 1 <= b <= len(t.children[end]):
            raise InconsistentNotation("deleted-edge stack has no room")
        chain = _chain_from(t, t.children[end][b - 1], count, occ) if count else []
        occ.update(chain)
        vertices.extend(chain)
    used = len(edges) + len(vertices)
    s = n - used
    if s < 0 or s != a.s:
        raise InconsistentNotation(f"base stack size {a.s} inconsistent with n={n}")
    base_chain = list(range(s))
    for v in base_chain:
        if v in occ:
            raise InconsistentNotation("base stack runs into an occupied vertex")
    vertices.extend(base_chain)
    c = make_cell(t, edges, vertices)
    return c


def a_term(t: EmbeddedTree, A: int, k: int, a: Iterable[int], n: int, extra: Iterable[int] = ()) -> Cell:
    """Convenience: the cell A_k(a) together with deleted edges ``extra`` and 0_s."""
    a = tuple(a)
    extra = tuple(extra)
    s = n - sum(a) - len(extra)
    return decode_a_notation(ANotation((BranchTerm(A, k, a),), extra, (), s), t, n)


def deleted_cell(t: EmbeddedTree, d: int, n: int, stacks: dict | None = None, terms=()) -> Cell:
    """A deleted edge with vertex stacks at its ends and the base stack.

    ``stacks`` maps an end vertex (first branch) or an (end, branch) pair to
    the number of vertices stacked there.
    """
    stacks = {(k if isinstance(k, tuple) else (k, 1)): v for k, v in (stacks or {}).items()}
    used = 1 + sum(stacks.values()) + sum(sum(bt.a) for bt in terms)
    return decode_a_notation(
        ANotation(tuple(terms), (d,), (), n - used, tuple(sorted(stacks.items()))), t, n
    )
