"""Group presentations of graph braid groups from the Morse complex.

Generators are critical 1-cells, relators are the rewritten boundary words
of critical 2-cells.  Presentations can be normalised by scripted Tietze
moves, tested for commutator-relatedness and mapped to Lambda^2 (the Phi
matrix).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .config_complex import (
    BranchTerm,
    Cell,
    cell_name,
    critical_cells,
    decode_a_notation,
    ANotation,
    encode_a_notation,
    deleted_cell,
    a_term,
)
from .errors import (
    NotCommutatorRelated,
    NotInCommutatorSubgroup,
    NotLinearStarBouquet,
    NotTwoCell,
    ScriptStepInapplicable,
)
from .exact_algebra import (
    abelianize,
    cyclic_reduce,
    free_reduce,
    inverse,
    lambda2_vector,
    rank,
)
from .graph_model import EmbeddedTree, Graph, bouquet_tree, contains_s0, contains_t0
from .morse_engine import rewriter


# ---------------------------------------------------------------------------
# presentations


@dataclass
class GroupPresentation:
    """Generators (cells or synthetic names) and relators over generator indices."""

    generators: list
    relators: list
    relator_ids: list
    names: list[str]
    log: list[str] = field(default_factory=list)

    def __post_init__(self):
        clean_r, clean_id = [], []
        for r, rid in zip(self.relators, self.relator_ids):
            r = cyclic_reduce(r)
            for x, _ in r:
                if not 0 <= x < len(self.generators):
                    raise ValueError(f"relator {rid} uses an unknown generator")
            if r:
                clean_r.append(r)
                clean_id.append(rid)
        self.relators = clean_r
        self.relator_ids = clean_id

    @property
    def rank(self) -> int:
        return len(self.generators)

    def copy(self) -> "GroupPresentation":
        return GroupPresentation(
            list(self.generators), list(self.relators), list(self.relator_ids), list(self.names), list(self.log)
        )

    def index_of(self, key) -> int:
        if isinstance(key, int):
            return key
        if isinstance(key, str):
            if key in self.names:
                return self.names.index(key)
        elif key in self.generators:
            return self.generators.index(key)
        raise ScriptStepInapplicable(f"no generator {key!r}")

    def word(self, letters: Iterable) -> tuple:
        """A word from (generator key, exponent) pairs; exponents may be any integer."""
        out = []
        for key, e in letters:
            x = self.index_of(key)
            out.extend([(x, 1 if e > 0 else -1)] * abs(e))
        return free_reduce(out)

    def word_text(self, w) -> str:
        parts = []
        for x, e in w:
            parts.append(self.names[x] + ("" if e > 0 else "^-1"))
        return " ".join(parts) if parts else "1"

    def relation_matrix(self) -> list[list[int]]:
        """Abelianised relators, one row each."""
        return [abelianize(r, self.rank) for r in self.relators]

    def to_json(self) -> dict:
        return {
            "generators": list(self.names),
            "relators": [[[self.names[x], e] for x, e in r] for r in self.relators],
            "relators_text": [self.word_text(r) for r in self.relators],
            "relator_ids": [str(i) for i in self.relator_ids],
            "log": list(self.log),
        }


def _edges_by_iota(t: EmbeddedTree, c: Cell) -> tuple[int, int]:
    if c.dim != 2:
        raise NotTwoCell(f"cell has dimension {c.dim}")
    e1, e2 = sorted(c.edges, key=t.iota)
    return e1, e2


def boundary_word(t: EmbeddedTree, c: Cell) -> tuple:
    """The four-letter boundary loop of a 2-cell as (1-cell, +-1) letters."""
    e1, e2 = _edges_by_iota(t, c)

    def face(keep, v):
        return Cell((keep,), tuple(sorted(c.vertices + (v,))))

    return (
        (face(e1, t.iota(e2)), 1),
        (face(e2, t.tau(e1)), 1),
        (face(e1, t.tau(e2)), -1),
        (face(e2, t.iota(e1)), -1),
    )


def rewritten_boundary(t: EmbeddedTree, c: Cell) -> tuple:
    """r~ of the boundary word, as (critical 1-cell, +-1) letters."""
    return cyclic_reduce(rewriter(t).word_of(boundary_word(t, c)))


def presentation(t: EmbeddedTree, n: int) -> GroupPresentation:
    gens = critical_cells(t, n, 1)
    idx = {c: i for i, c in enumerate(gens)}
    rels, ids = [], []
    for c in critical_cells(t, n, 2):
        w = rewritten_boundary(t, c)
        if w:
            rels.append(tuple((idx[g], e) for g, e in w))
            ids.append(cell_name(t, c))
    return GroupPresentation(gens, rels, ids, [cell_name(t, g) for g in gens])


# ---------------------------------------------------------------------------
# Tietze moves


@dataclass(frozen=True)
class TietzeStep:
    """``eliminate`` a generator via a relator, or ``introduce`` a named product.

    For ``introduce``, ``word`` lists (generator key, exponent) pairs and
    ``target`` (optional) is eliminated through the defining relation.
    """

    op: str
    target: object = None
    via: object = None
    name: str = ""
    word: tuple = ()


def _occurrences(r, x) -> int:
    return sum(1 for g, _ in r if g == x)


def eliminate(p: GroupPresentation, gen, via=None) -> GroupPresentation:
    x = p.index_of(gen)
    if via is not None:
        if via not in p.relator_ids:
            raise ScriptStepInapplicable(f"no relator {via!r}")
        choices = [p.relator_ids.index(via)]
    else:
        choices = [i for i, r in enumerate(p.relators) if _occurrences(r, x) == 1]
        choices.sort(key=lambda i: len(p.relators[i]))
    for i in choices:
        r = p.relators[i]
        if _occurrences(r, x) != 1:
            continue
        pos = next(k for k, (g, _) in enumerate(r) if g == x)
        rot = r[pos:] + r[:pos]
        e, rest = rot[0][1], rot[1:]
        value = inverse(rest) if e > 0 else tuple(rest)
        break
    else:
        raise ScriptStepInapplicable(f"{p.names[x]} does not occur exactly once in a relator")
    rels, ids = [], []
    for j, (s, rid) in enumerate(zip(p.relators, p.relator_ids)):
        if j == i:
            continue
        out = []
        for g, f in s:
            if g == x:
                out.extend(value if f > 0 else inverse(value))
            else:
                out.append((g, f))
        rels.append(tuple((g - (g > x), f) for g, f in free_reduce(out)))
        ids.append(rid)
    gens = p.generators[:x] + p.generators[x + 1 :]
    names = p.names[:x] + p.names[x + 1 :]
    log = p.log + [f"eliminate {p.names[x]} = {p.word_text(value)} via {p.relator_ids[i]}"]
    return GroupPresentation(gens, rels, ids, names, log)


def introduce(p: GroupPresentation, name: str, word, target=None) -> GroupPresentation:
    w = p.word(word)
    if name in p.names:
        raise ScriptStepInapplicable(f"generator {name} already exists")
    x = p.rank
    rid = f"def {name}"
    q = GroupPresentation(
        p.generators + [name],
        p.relators + [((x, 1),) + inverse(w)],
        p.relator_ids + [rid],
        p.names + [name],
        p.log + [f"introduce {name} = {p.word_text(w)}"],
    )
    if target is not None:
        q = eliminate(q, target, via=rid)
    return q


def tietze_simplify(p: GroupPresentation, policy: Sequence[TietzeStep] | None = None) -> GroupPresentation:
    """Apply a script of Tietze steps; an empty policy leaves ``p`` unchanged."""
    q = p.copy()
    for step in policy or ():
        if step.op == "eliminate":
            q = eliminate(q, step.target, step.via)
        elif step.op == "introduce":
            q = introduce(q, step.name, step.word, step.target)
        else:
            raise ScriptStepInapplicable(f"unknown step {step.op!r}")
    return q


def eliminate_unimodular(p: GroupPresentation, limit: int | None = None) -> GroupPresentation:
    """Greedy eliminations through relators that do not abelianise to zero.

    Repeatedly picks the shortest such relator containing a generator that
    occurs exactly once and eliminates that generator.  Every step is an
    ordinary Tietze move, so the group is unchanged.
    """
    q = p
    steps = 0
    while limit is None or steps < limit:
        best = None
        for i, r in enumerate(q.relators):
            if not any(abelianize(r, q.rank)):
                continue
            once = [g for g in dict.fromkeys(x for x, _ in r) if _occurrences(r, g) == 1]
            if once and (best is None or len(r) < len(q.relators[best[0]])):
                best = (i, max(once))
        if best is None:
            break
        q = eliminate(q, best[1], via=q.relator_ids[best[0]])
        steps += 1
    return q


# ---------------------------------------------------------------------------
# named scripts


def _s0_cells(t: EmbeddedTree, n: int):
    A = t.label_of("A")
    d = t.code_of_name("d")
    tau = t.tau(d)

    def dk(k):
        return deleted_cell(t, d, n, {tau: k} if k else None)

    def A2(a, b):
        return a_term(t, A, 2, (a, b), n)

    return dk, A2


def _cell(t: EmbeddedTree, n: int, terms=(), deleted=(), stacks=None) -> Cell:
    used = sum(sum(bt.a) for bt in terms) + len(deleted) + sum((stacks or {}).values())
    stacks = {(k if isinstance(k, tuple) else (k, 1)): v for k, v in (stacks or {}).items() if v}
    s = n - used
    if s and any(0 in t.ends(d) for d in deleted):
        # the base is an end of a deleted edge: the base stack grows above it
        stacks[(0, 1)] = stacks.get((0, 1), 0) + s
        s = 0
    return decode_a_notation(ANotation(tuple(terms), tuple(deleted), (), s, tuple(sorted(stacks.items()))), t, n)


def s0_script(t: EmbeddedTree, n: int) -> list[TietzeStep]:
    """Conjugation eliminations followed by the d(n-1)^-1 d(m) substitution."""
    dk, A2 = _s0_cells(t, n)
    A, d = t.label_of("A"), t.code_of_name("d")
    steps = []
    for a in range(1, n):
        for b in range(1, n - a):
            l = n - 1 - a - b
            c = _cell(t, n, (BranchTerm(A, 2, (a, b)),), (d,), {t.tau(d): l})
            steps.append(TietzeStep("eliminate", A2(a, b + 1), via=cell_name(t, c)))
    top = dk(n - 1)
    for m in range(n - 1):
        steps.append(TietzeStep("introduce", dk(m), name=f"dbar({m})", word=((top, -1), (dk(m), 1))))
    return steps


def example_s0_n4_script(t: EmbeddedTree) -> list[TietzeStep]:
    """The short S0 recipe at n=4: three eliminations and one product generator."""
    n = 4
    dk, A2 = _s0_cells(t, n)
    steps = [TietzeStep("eliminate", A2(a, b + 1)) for a, b in ((1, 1), (1, 2), (2, 1))]
    steps.append(TietzeStep("introduce", dk(3), name="g", word=((dk(2), -1), (dk(3), 1))))
    return steps


def theta_script(t: EmbeddedTree, n: int) -> list[TietzeStep]:
    """Eliminate every Y_2(a,b) except Y_2(1,1)."""
    Y = t.label_of("Y")
    d1, d2 = t.code_of_name("d1"), t.code_of_name("d2")

    def Y2(a, b):
        return a_term(t, Y, 2, (a, b), n)

    def via(a, b, d):
        return cell_name(t, _cell(t, n, (BranchTerm(Y, 2, (a, b)),), (d,)))

    steps = []
    for a in range(1, n - 1):
        steps.append(TietzeStep("eliminate", Y2(a + 1, 1), via=via(a, 1, d1)))
    for b in range(1, n - 1):
        for a in range(1, n - b):
            steps.append(TietzeStep("eliminate", Y2(a, b + 1), via=via(a, b, d2)))
    return steps


def t3_script(t: EmbeddedTree, n: int) -> list[TietzeStep]:
    """Replace A_2(a) by the successive quotients Abar(a) along the first coordinate."""
    A = t.label_of("A")
    pairs = [(a1, a2) for a2 in range(1, n) for a1 in range(1, n - a2 + 1)]

    def A2(a1, a2):
        return a_term(t, A, 2, (a1, a2), n)

    steps = []
    for a1, a2 in pairs:
        word = ((A2(a1, a2), 1),) if a1 == 1 else ((A2(a1 - 1, a2), -1), (A2(a1, a2), 1))
        steps.append(TietzeStep("introduce", name=f"Abar({a1},{a2})", word=word))
    for a1, a2 in pairs:
        steps.append(TietzeStep("eliminate", A2(a1, a2), via=f"def Abar({a1},{a2})"))
    return steps


def named_script(name: str, t: EmbeddedTree, n: int) -> list[TietzeStep]:
    if name == "s0":
        return example_s0_n4_script(t) if n == 4 else s0_script(t, n)
    if name == "s0-general":
        return s0_script(t, n)
    if name == "theta":
        return theta_script(t, n)
    if name == "t3":
        return t3_script(t, n)
    raise ScriptStepInapplicable(f"unknown script {name!r}")


SCRIPTS = ("s0", "s0-general", "theta", "t3")


# ---------------------------------------------------------------------------
# commutator-relatedness and Phi


def is_commutator_related(p: GroupPresentation) -> bool:
    return all(not any(abelianize(r, p.rank)) for r in p.relators)


@dataclass
class PhiData:
    pairs: list[tuple[int, int]]
    rows: list[dict]
    rank: int
    supports: list[tuple[int, int]]

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        def pname(pr):
            return [names[pr[0]], names[pr[1]]] if names else list(pr)

        return {
            "rank": self.rank,
            "rows": [[[*pname(k), v] for k, v in sorted(r.items())] for r in self.rows],
            "supports": [pname(pr) for pr in self.supports],
        }


def phi_matrix(p: GroupPresentation) -> PhiData:
    rows = []
    for r, rid in zip(p.relators, p.relator_ids):
        try:
            rows.append(lambda2_vector(r, p.rank))
        except NotInCommutatorSubgroup as exc:
            raise NotCommutatorRelated(f"relator {rid} is not in the commutator subgroup") from exc
    supports = sorted({k for r in rows for k in r})
    col = {k: i for i, k in enumerate(supports)}
    sparse = [{col[k]: v for k, v in r.items()} for r in rows]
    pairs = [(i, j) for i in range(p.rank) for j in range(i + 1, p.rank)]
    return PhiData(pairs, rows, rank(sparse) if sparse else 0, supports)


# ---------------------------------------------------------------------------
# linear star-bouquets


def is_linear_star_bouquet(g: Graph) -> bool:
    return not contains_t0(g) and not contains_s0(g)


def _spine_shift(t: EmbeddedTree, bt: BranchTerm, extra: int) -> BranchTerm:
    a = list(bt.a)
    if extra:
        a[-1] += extra
    return BranchTerm(bt.vertex, bt.k, tuple(a))


def _shifted(t: EmbeddedTree, lower: Cell, upper: Cell, n: int) -> Cell:
    """The lower element with the upper element's size stacked on its spine branch.

    The upper element sits beyond the last branch of the lower element's
    branch vertex, so its elements are pushed onto that branch.
    """
    a = encode_a_notation(t, lower)
    used_upper = n - encode_a_notation(t, upper).s
    if a.branch_terms:
        bt = _spine_shift(t, a.branch_terms[0], used_upper)
        return decode_a_notation(ANotation((bt,), (), (), a.s - used_upper), t, n)
    (d,) = a.deleted
    stacks = dict(a.deleted_stacks)
    A = t.tau(d)
    key = (A, len(t.children[A]))
    stacks[key] = stacks.get(key, 0) + used_upper
    return decode_a_notation(ANotation((), (d,), (), a.s - used_upper, tuple(sorted(stacks.items()))), t, n)


def raag_presentation_linear_star_bouquet(g, n: int) -> GroupPresentation:
    """Closed-form commutator presentation on the canonical bouquet tree.

    Each critical 2-cell splits into a lower element at A^i and an upper
    element at A^j (i < j, below meaning nearer the base).  Its relator is
    the commutator of the upper element alone with the lower element
    carrying the upper element's vertex count on its spine branch.
    """
    t = g if isinstance(g, EmbeddedTree) else None
    graph = t.graph if t is not None else g
    if not is_linear_star_bouquet(graph):
        raise NotLinearStarBouquet("graph contains T0 or S0")
    if t is None:
        t = bouquet_tree(graph)
    gens = critical_cells(t, n, 1)
    idx = {c: i for i, c in enumerate(gens)}
    rels, ids = [], []
    for c in critical_cells(t, n, 2):
        lower, upper = split_two_cell(t, c, n)
        x = _shifted(t, lower, upper, n)
        y = upper
        rels.append(((idx[x], 1), (idx[y], 1), (idx[x], -1), (idx[y], -1)))
        ids.append(cell_name(t, c))
    return GroupPresentation(gens, rels, ids, [cell_name(t, c) for c in gens], ["closed form"])


def split_two_cell(t: EmbeddedTree, c: Cell, n: int) -> tuple[Cell, Cell]:
    """Split a critical 2-cell into its two critical 1-cell elements.

    The upper element keeps its edge and the vertices it blocks; the lower
    element keeps the rest, with the base stack absorbing the upper part.
    """
    a = encode_a_notation(t, c)
    items = []
    for bt in a.branch_terms:
        items.append(("A", bt.vertex, bt))
    for d in a.deleted:
        items.append(("d", t.tau(d), d))
    if len(items) != 2:
        raise NotTwoCell("not a 2-cell")
    items.sort(key=lambda it: it[1])
    (k1, v1, x1), (k2, v2, x2) = items
    stacks = dict(a.deleted_stacks)

    def one(kind, v, x, s):
        if kind == "A":
            return ANotation((x,), (), (), s)
        own = tuple(sorted((k, m) for k, m in stacks.items() if k[0] in t.ends(x)))
        return ANotation((), (x,), (), s, own)

    def size(kind, v, x):
        if kind == "A":
            return sum(x.a)
        return 1 + sum(m for k, m in stacks.items() if k[0] in t.ends(x))

    upper = decode_a_notation(one(k2, v2, x2, n - size(k2, v2, x2)), t, n)
    lower = decode_a_notation(one(k1, v1, x1, n - size(k1, v1, x1)), t, n)
    return lower, upper


def compare_presentations(p: GroupPresentation, q: GroupPresentation) -> list[str]:
    """Relator ids where two presentations on the same generators disagree (up to rotation/inversion)."""
    from .exact_algebra import cyclic_equal

    if p.generators != q.generators:
        return ["generators differ"]
    qmap = dict(zip(q.relator_ids, q.relators))
    bad = []
    for rid, r in zip(p.relator_ids, p.relators):
        s = qmap.get(rid)
        if s is None or not cyclic_equal(r, s):
            bad.append(str(rid))
    for rid in q.relator_ids:
        if rid not in p.relator_ids:
            bad.append(str(rid))
    return bad
