"""Cubical boundaries, the rewriting maps and the Morse chain complex."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .config_complex import (
    COLLAPSIBLE,
    CRITICAL,
    REDUNDANT,
    Cell,
    classify,
    critical_cells,
    matching_W,
    occupied,
)
from .exact_algebra import HomologySummary, homology_sparse
from .errors import EmbeddingConditionViolated, NonStabilizing, NotAChainComplex, TooFewVertices
from .graph_model import EmbeddedTree

Chain = dict  # Cell -> int


def _add(acc: dict, key, coef: int):
    v = acc.get(key, 0) + coef
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def face(t: EmbeddedTree, c: Cell, k: int, end: str) -> Cell:
    """Replace the k-th edge (0-based, initial-vertex order) by one of its ends."""
    e = c.edges[k]
    v = t.iota(e) if end == "iota" else t.tau(e)
    return Cell(c.edges[:k] + c.edges[k + 1 :], tuple(sorted(c.vertices + (v,))))


def cubical_boundary(t: EmbeddedTree, c: Cell) -> Chain:
    """Sum over k of (-1)^k (iota-face - tau-face), edges numbered from 1."""
    out: dict = {}
    for k in range(len(c.edges)):
        sign = -1 if k % 2 == 0 else 1
        _add(out, face(t, c, k, "iota"), sign)
        _add(out, face(t, c, k, "tau"), -sign)
    return out


def cubical_boundary_chain(t: EmbeddedTree, x: Chain) -> Chain:
    out: dict = {}
    for c, a in x.items():
        for f, b in cubical_boundary(t, c).items():
            _add(out, f, a * b)
    return out


# ---------------------------------------------------------------------------
# vertex shifts


def shift_V(t: EmbeddedTree, c: Cell) -> Cell:
    """Move the smallest unblocked vertex of a redundant cell one step toward the base."""
    k = classify(t, c)
    if k.tag != REDUNDANT:
        return c
    v = k.smallest_unblocked
    rest = [x for x in c.vertices if x != v] + [t.parent[v]]
    return Cell(c.edges, tuple(sorted(rest)))


def stabilized_V(t: EmbeddedTree, c: Cell) -> Cell:
    limit = t.V * max(c.n, 1) + 1
    for _ in range(limit):
        nxt = shift_V(t, c)
        if nxt == c:
            return c
        c = nxt
    raise NonStabilizing("vertex shift did not stabilise")


def V_e(t: EmbeddedTree, c: Cell, v: int) -> Cell:
    """Replace vertex v by its parent (the terminal vertex of the edge from v)."""
    rest = [x for x in c.vertices if x != v] + [t.parent[v]]
    return Cell(c.edges, tuple(sorted(rest)))


def is_simply_unblocked(t: EmbeddedTree, c: Cell, v: int, occ: set | None = None) -> bool:
    if v == 0 or v not in c.vertices:
        return False
    occ = occupied(t, c) if occ is None else occ
    p = t.parent[v]
    if p in occ:
        return False
    return not any(p < w < v for w in occ)


# ---------------------------------------------------------------------------
# chain-level rewriting


class Rewriter:
    """Memoised stabilised rewriting for one tree.

    ``chain(c)`` is the image of a cell in the Morse complex (a dict over
    critical cells); ``word(c)`` is the group-level image of a 1-cell as a
    tuple of (critical cell, +-1).
    """

    def __init__(self, t: EmbeddedTree):
        self.t = t
        self._chain: dict = {}
        self._word: dict = {}
        self._class: dict = {}

    def kind(self, c: Cell):
        k = self._class.get(c)
        if k is None:
            k = classify(self.t, c)
            self._class[c] = k
        return k

    def _expansion(self, c: Cell) -> list[tuple[Cell, int]]:
        """R(c) - c for a redundant cell: the other faces of W(c), signed."""
        w = matching_W(self.t, c)
        bd = cubical_boundary(self.t, w)
        s = bd[c]
        # s * bd(W) has coefficient s*s = 1 at c; R(c) = c - s*bd(W)
        return [(f, -s * a) for f, a in bd.items() if f != c]

    def chain(self, c: Cell) -> dict:
        memo = self._chain
        if c in memo:
            return memo[c]
        stack = [c]
        pending: dict = {}
        steps = 0
        while stack:
            x = stack[-1]
            if x in memo:
                stack.pop()
                continue
            tag = self.kind(x).tag
            if tag == CRITICAL:
                memo[x] = {x: 1}
                stack.pop()
                continue
            if tag == COLLAPSIBLE:
                memo[x] = {}
                stack.pop()
                continue
            exp = pending.get(x)
            if exp is None:
                exp = self._expansion(x)
                pending[x] = exp
            missing = [f for f, _ in exp if f not in memo]
            if missing:
                steps += 1
                if steps > 50_000_000:
                    raise NonStabilizing("chain rewriting did not terminate")
                stack.extend(missing)
                continue
            acc: dict = {}
            for f, a in exp:
                for g, b in memo[f].items():
                    _add(acc, g, a * b)
            memo[x] = acc
            del pending[x]
            stack.pop()
        return memo[c]

    def chain_of(self, x: Chain) -> dict:
        out: dict = {}
        for c, a in x.items():
            for g, b in self.chain(c).items():
                _add(out, g, a * b)
        return out

    def word(self, c: Cell) -> tuple:
        memo = self._word
        if c in memo:
            return memo[c]
        if c.dim != 1:
            raise ValueError("words are defined for 1-cells only")
        stack = [c]
        pending: dict = {}
        while stack:
            x = stack[-1]
            if x in memo:
                stack.pop()
                continue
            tag = self.kind(x).tag
            if tag == CRITICAL:
                memo[x] = ((x, 1),)
                stack.pop()
                continue
            if tag == COLLAPSIBLE:
                memo[x] = ()
                stack.pop()
                continue
            letters = pending.get(x)
            if letters is None:
                letters = self._letters(x)
                pending[x] = letters
            missing = [f for f, _ in letters if f not in memo]
            if missing:
                stack.extend(missing)
                continue
            out: list = []
            for f, sgn in letters:
                part = memo[f]
                if sgn < 0:
                    part = tuple((g, -s) for g, s in reversed(part))
                for item in part:
                    if out and out[-1][0] == item[0] and out[-1][1] == -item[1]:
                        out.pop()
                    else:
                        out.append(item)
            memo[x] = tuple(out)
            del pending[x]
            stack.pop()
        return memo[c]

    def _letters(self, c: Cell) -> list[tuple[Cell, int]]:
        """One application of r to a redundant 1-cell."""
        t = self.t
        k = self.kind(c)
        v = k.smallest_unblocked
        p = t.parent[v]
        e = c.edges[0]
        rest = [x for x in c.vertices if x != v]
        first = Cell((v,), tuple(sorted(rest + [t.iota(e)])))
        middle = Cell((e,), tuple(sorted(rest + [p])))
        last = Cell((v,), tuple(sorted(rest + [t.tau(e)])))
        return [(first, 1), (middle, 1), (last, -1)]

    def word_of(self, letters: Iterable[tuple[Cell, int]]) -> tuple:
        out: list = []
        for c, sgn in letters:
            part = self.word(c)
            if sgn < 0:
                part = tuple((g, -s) for g, s in reversed(part))
            for item in part:
                if out and out[-1][0] == item[0] and out[-1][1] == -item[1]:
                    out.pop()
                else:
                    out.append(item)
        return tuple(out)


_REWRITERS: dict = {}


def rewriter(t: EmbeddedTree) -> Rewriter:
    key = id(t)
    r = _REWRITERS.get(key)
    if r is None or r.t is not t:
        r = Rewriter(t)
        _REWRITERS[key] = r
        if len(_REWRITERS) > 64:
            _REWRITERS.pop(next(iter(_REWRITERS)))
    return r


def rewrite_word(t: EmbeddedTree, c: Cell) -> tuple:
    return rewriter(t).word(c)


def rewrite_chain(t: EmbeddedTree, x) -> dict:
    if isinstance(x, Cell):
        return rewriter(t).chain(x)
    return rewriter(t).chain_of(x)


def morse_boundary(t: EmbeddedTree, c: Cell) -> dict:
    return rewriter(t).chain_of(cubical_boundary(t, c))


# ---------------------------------------------------------------------------
# Morse complex


@dataclass
class MorseComplex:
    tree: EmbeddedTree
    n: int
    bases: list[list[Cell]]
    boundaries: list[list[list[int]]] = field(default_factory=list)

    def rank(self, k: int) -> int:
        return len(self.bases[k]) if 0 <= k < len(self.bases) else 0

    def matrix(self, k: int) -> list[list[int]]:
        """Boundary from dimension k to k-1 (rows: (k-1)-cells, cols: k-cells)."""
        if k <= 0 or k >= len(self.bases):
            return [[] for _ in range(self.rank(k - 1))] if k > 0 else []
        return self.boundaries[k]

    def index(self, k: int) -> dict:
        return {c: i for i, c in enumerate(self.bases[k])}

    def homology(self, k: int) -> HomologySummary:
        """H_k of the Morse complex; needs the complex built through k+1."""
        if k + 1 >= len(self.bases) and k + 1 <= self.n:
            raise ValueError(f"complex built only through dimension {len(self.bases) - 1}")
        d_in = self.matrix(k) if k > 0 else []
        d_out = self.matrix(k + 1) if k + 1 < len(self.bases) else []
        return homology_sparse(d_in, d_out, self.rank(k), k)


def _matrix(t, rw, rows, cols) -> list[list[int]]:
    idx = {c: i for i, c in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for j, c in enumerate(cols):
        for f, a in rw.chain_of(cubical_boundary(t, c)).items():
            M[idx[f]][j] += a
    return M


def build_morse_complex(t: EmbeddedTree, n: int, maxdim: int | None = None, check: bool = True) -> MorseComplex:
    if t.V < n:
        raise TooFewVertices(f"graph has {t.V} vertices, fewer than n={n}")
    if maxdim is None:
        maxdim = n
    bases = [critical_cells(t, n, k) for k in range(maxdim + 1)]
    rw = rewriter(t)
    mats: list = [[]]
    for k in range(1, maxdim + 1):
        mats.append(_matrix(t, rw, bases[k - 1], bases[k]))
    mc = MorseComplex(t, n, bases, mats)
    if check:
        for k in range(2, maxdim + 1):
            A, B = mats[k - 1], mats[k]
            for i in range(len(A)):
                for j in range(len(bases[k])):
                    if sum(A[i][m] * B[m][j] for m in range(len(bases[k - 1]))):
                        raise NotAChainComplex(f"boundary squared is nonzero in degree {k}")
    return mc


# ---------------------------------------------------------------------------
# embeddings


@dataclass
class ChainMap:
    source: MorseComplex
    target: MorseComplex
    cell_map: dict
    matrices: list

    def image(self, c: Cell) -> Cell:
        return self.cell_map[c]


def _map_cell(emb_v: dict, emb_e: dict, c: Cell, s: tuple, t: EmbeddedTree) -> Cell:
    edges = [emb_e[e] for e in c.edges]
    verts = [emb_v[v] for v in c.vertices] + list(s)
    return Cell(tuple(sorted(edges, key=t.iota)), tuple(sorted(verts)))


def induced_chain_map(
    vertex_map: dict,
    t_src: EmbeddedTree,
    t_dst: EmbeddedTree,
    n_src: int,
    n_dst: int,
    maxdim: int = 2,
) -> ChainMap:
    """Chain map of Morse complexes induced by a graph embedding.

    ``vertex_map`` sends ordered labels of the source tree to ordered labels
    of the target tree.  The source is placed past the first ``n_dst - n_src``
    vertices of the target, which are added to every image cell.
    """
    shift = n_dst - n_src
    if shift < 0:
        raise EmbeddingConditionViolated(2, "target braid index is smaller")
    if t_src.tree_valency(0) != 1 and t_src.V > 1:
        raise EmbeddingConditionViolated(1, "source base is not of valency one")
    # condition 2: path from image of base to 0, of length shift, outside the image
    start = vertex_map[0]
    path = t_dst.path_to_base(start)
    if len(path) - 1 != shift:
        raise EmbeddingConditionViolated(2, f"base path has {len(path) - 1} edges, expected {shift}")
    image = set(vertex_map.values())
    if any(v in image for v in path[1:]):
        raise EmbeddingConditionViolated(2, "base path meets the image")
    # condition 3: order preserving
    for a in range(t_src.V):
        for b in range(a + 1, t_src.V):
            if not vertex_map[a] < vertex_map[b]:
                raise EmbeddingConditionViolated(3, "order is not preserved")
    # condition 4: edges correspond, deleted to deleted
    dst_edges = {}
    for code in t_dst.edge_codes():
        key = frozenset(t_dst.ends(code))
        dst_edges.setdefault(key, []).append(code)
    emb_e = {}
    for code in t_src.edge_codes():
        a, b = t_src.ends(code)
        cands = dst_edges.get(frozenset((vertex_map[a], vertex_map[b])), [])
        cands = [x for x in cands if t_dst.is_deleted(x) == t_src.is_deleted(code)]
        if not cands:
            raise EmbeddingConditionViolated(4, f"edge {t_src.edge_name(code)} has no matching image")
        emb_e[code] = cands[0]
    s = tuple(range(shift))
    src = build_morse_complex(t_src, n_src, maxdim)
    dst = build_morse_complex(t_dst, n_dst, maxdim)
    cell_map = {}
    mats = []
    for k in range(maxdim + 1):
        idx = dst.index(k)
        M = [[0] * len(src.bases[k]) for _ in dst.bases[k]]
        for j, c in enumerate(src.bases[k]):
            img = _map_cell(vertex_map, emb_e, c, s, t_dst)
            cell_map[c] = img
            if img not in idx:
                raise EmbeddingConditionViolated(4, "critical cell does not map to a critical cell")
            M[idx[img]][j] = 1
        mats.append(M)
    return ChainMap(src, dst, cell_map, mats)
