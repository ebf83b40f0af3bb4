"""RAAG verdicts for graph braid groups and the planarity/torsion audit.

For n >= 5 the verdict follows the T0/S0 dichotomy: graphs containing
neither are linear star-bouquets and get an explicit commutator
presentation, all others are not RAAGs.  For smaller n only negative
certificates are reported (torsion, Phi rank deficit, triangle mismatch).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GraphBraidError, NotCommutatorRelated, NotConnected
from .exact_algebra import Lattice
from .graph_model import (
    STRICT,
    VALENCY2_ENDS,
    EmbeddedTree,
    Graph,
    bouquet_tree,
    choose_maximal_tree,
    contains_subdivision,
    essential_arcs,
    is_planar,
    planar_walk_tree,
    s0_pattern,
    subdivide_for_index,
    t0_pattern,
)
from .morse_engine import build_morse_complex
from .presentations import (
    GroupPresentation,
    eliminate_unimodular,
    is_commutator_related,
    named_script,
    phi_matrix,
    presentation,
    raag_presentation_linear_star_bouquet,
    tietze_simplify,
)

IS_RAAG = "IsRAAG"
NOT_RAAG = "NotRAAG"
UNKNOWN = "Unknown"

# above this many critical 2-cells auxiliary evidence is skipped
EVIDENCE_LIMIT = 64


@dataclass
class Certificate:
    """One of ContainsT0, ContainsS0, PhiRankDeficit, TorsionInH1, TriangleMismatch."""

    kind: str
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, **self.data}


def contains_certificate(kind: str, witness) -> Certificate:
    return Certificate(
        kind,
        {
            "branch_map": {str(k): v for k, v in sorted(witness.branch_map.items())},
            "paths": [list(p) for p in witness.paths],
        },
    )


def phi_rank_deficit(got: int, need: int) -> Certificate:
    return Certificate("PhiRankDeficit", {"got": got, "need": need})


def torsion_in_h1(factors: list[int]) -> Certificate:
    return Certificate("TorsionInH1", {"factors": list(factors)})


def triangle_mismatch(triangles: int, h3: int) -> Certificate:
    return Certificate("TriangleMismatch", {"triangles": triangles, "h3": h3})


def recheck(cert: Certificate, g: Graph | None = None) -> bool:
    """Re-verify a negative certificate from its payload (plus the graph for patterns)."""
    d = cert.data
    if cert.kind == "PhiRankDeficit":
        return d["got"] < d["need"]
    if cert.kind == "TorsionInH1":
        return any(f > 1 for f in d["factors"])
    if cert.kind == "TriangleMismatch":
        return d["triangles"] != d["h3"]
    if cert.kind in ("ContainsT0", "ContainsS0"):
        if g is None:
            return False
        return _witness_ok(g, t0_pattern() if cert.kind == "ContainsT0" else s0_pattern(), d)
    return False


def _witness_ok(g: Graph, p: Graph, d: dict) -> bool:
    """Check a witness: routes for the arcs between branch vertices, then pendant half-edges."""
    pval = p.valencies()
    arcs = essential_arcs(p)
    branch = sorted(v for v in range(p.vertex_count) if pval[v] >= 3)
    bmap = {int(k): v for k, v in d["branch_map"].items()}
    if sorted(bmap) != branch or len(set(bmap.values())) != len(bmap):
        return False
    full = [a for a in arcs if pval[a.start] != 1 and pval[a.end] != 1]
    hairs: dict = {}
    for a in arcs:
        if pval[a.start] == 1 or pval[a.end] == 1:
            v = a.end if pval[a.start] == 1 else a.start
            hairs[bmap[v]] = hairs.get(bmap[v], 0) + 1
    paths = [list(x) for x in d["paths"]]
    routes, pendants = paths[: len(full)], paths[len(full) :]
    if len(pendants) != sum(hairs.values()):
        return False
    want = sorted(tuple(sorted((bmap[a.start], bmap[a.end]))) for a in full)
    if sorted(tuple(sorted((r[0], r[-1]))) for r in routes) != want:
        return False
    mult: dict = {}
    for a, b in g.edges:
        key = (min(a, b), max(a, b))
        mult[key] = mult.get(key, 0) + 1
    images = set(bmap.values())
    seen: set = set()
    used: dict = {}
    for r in routes:
        if len(r) < 2:
            return False
        inner = r[1:-1]
        if any(v in images or v in seen for v in inner) or len(set(inner)) != len(inner):
            return False
        seen.update(inner)
        for u, v in zip(r, r[1:]):
            key = (min(u, v), max(u, v))
            used[key] = used.get(key, 0) + 1
    half: dict = {}
    for x in pendants:
        if len(x) != 2:
            return False
        half[(x[0], x[1])] = half.get((x[0], x[1]), 0) + 1
    got: dict = {}
    for (x, y), c in half.items():
        got[x] = got.get(x, 0) + c
    if got != hairs:
        return False
    keys = set(used) | {(min(x, y), max(x, y)) for x, y in half}
    for a, b in keys:
        free = mult.get((a, b), 0) - used.get((a, b), 0)
        if a == b:
            need = half.get((a, a), 0)
            if free < 0 or 2 * free < need:
                return False
        elif free < max(half.get((a, b), 0), half.get((b, a), 0), 0) or free < 0:
            return False
    return True


@dataclass
class RaagVerdict:
    verdict: str
    n: int
    presentation: GroupPresentation | None = None
    certificate: Certificate | None = None
    reason: str = ""
    evidence: list = field(default_factory=list)

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict, "n": self.n}
        if self.presentation is not None:
            out["presentation"] = self.presentation.to_json()
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.reason:
            out["reason"] = self.reason
        if self.evidence:
            out["evidence"] = [e.to_json() for e in self.evidence]
        return out


def _connected(g: Graph) -> bool:
    if g.vertex_count == 0:
        return False
    seen = {0}
    stack = [0]
    nbrs: dict = {}
    for a, b in g.edges:
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    while stack:
        v = stack.pop()
        for w in nbrs.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.vertex_count


def _require_connected(g: Graph):
    if not _connected(g):
        raise NotConnected("graph is not connected")


def commutator_presentation(t: EmbeddedTree, n: int, script: str | None = None) -> GroupPresentation | None:
    """A commutator-related presentation, from a named script or greedy eliminations."""
    p = presentation(t, n)
    q = tietze_simplify(p, named_script(script, t, n)) if script else eliminate_unimodular(p)
    return q if is_commutator_related(q) else None


def _monomial(ph) -> bool:
    """Is the image of Phi spanned by the wedges x^y it contains?"""
    lat = Lattice(ph.rows)
    mono = Lattice([{pr: 1} for pr in ph.supports if lat.contains({pr: 1})])
    return all(mono.contains(r) for r in ph.rows)


def negative_certificates(t: EmbeddedTree, n: int, script: str | None = None, first: bool = True):
    """Search for torsion, Phi rank deficit and triangle mismatch, in that order.

    Returns (certificates, presentation used or None).
    """
    from .z2_cohomology import cup_graph_from_presentation

    found: list[Certificate] = []
    mc = build_morse_complex(t, n, maxdim=min(n, 4), check=False)
    h1 = mc.homology(1)
    if h1.torsion:
        found.append(torsion_in_h1(h1.torsion))
        if first:
            return found, None
    q = commutator_presentation(t, n, script)
    if q is None:
        return found, None
    ph = phi_matrix(q)
    need = mc.homology(2).betti if n >= 2 else 0
    if ph.rank < need:
        found.append(phi_rank_deficit(ph.rank, need))
        if first:
            return found, q
    if n >= 3 and _monomial(ph):
        h3 = mc.homology(3).betti
        tri = cup_graph_from_presentation(q).triangle_count
        if tri != h3:
            found.append(triangle_mismatch(tri, h3))
    return found, q


def _default_tree(g: Graph, n: int) -> EmbeddedTree:
    return choose_maximal_tree(subdivide_for_index(g, n, STRICT), VALENCY2_ENDS)


def is_raag(g: Graph, n: int, tree: EmbeddedTree | None = None, script: str | None = None) -> RaagVerdict:
    """RAAG verdict for B_n of ``g``.

    ``tree`` (an embedded tree for a sufficient subdivision of ``g``) and
    ``script`` (a named Tietze script) are used for the small-n certificates
    and for auxiliary evidence.
    """
    _require_connected(g)
    if n < 2:
        raise GraphBraidError("braid index must be at least 2")
    hit_t0, w0 = contains_subdivision(g, t0_pattern(), want_witness=True)
    hit_s0, ws = (False, None) if hit_t0 else contains_subdivision(g, s0_pattern(), want_witness=True)
    if not hit_t0 and not hit_s0:
        t = tree if tree is not None else bouquet_tree(subdivide_for_index(g, n, STRICT))
        return RaagVerdict(IS_RAAG, n, presentation=raag_presentation_linear_star_bouquet(t, n))
    if n >= 5:
        cert = contains_certificate("ContainsT0", w0) if hit_t0 else contains_certificate("ContainsS0", ws)
        v = RaagVerdict(NOT_RAAG, n, certificate=cert)
        t = tree
        if t is None:
            try:
                t = _default_tree(g, n)
            except GraphBraidError:
                t = None
        if t is not None and build_size(t, n) <= EVIDENCE_LIMIT:
            try:
                v.evidence, _ = negative_certificates(t, n, script, first=False)
            except (NotCommutatorRelated, GraphBraidError):
                pass
        return v
    t = tree if tree is not None else _default_tree(g, n)
    certs, q = negative_certificates(t, n, script)
    if certs:
        return RaagVerdict(NOT_RAAG, n, certificate=certs[0])
    reason = "no negative certificate found below braid index 5"
    return RaagVerdict(UNKNOWN, n, presentation=q, reason=reason)


def build_size(t: EmbeddedTree, n: int) -> int:
    from .config_complex import critical_cells

    return len(critical_cells(t, n, 2))


@dataclass
class AuditReport:
    n: int
    planar: bool
    torsion: list[int]
    tree: str
    consistent: bool
    statement: str

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "planar": self.planar,
            "torsion": list(self.torsion),
            "tree": self.tree,
            "consistent": self.consistent,
            "statement": self.statement,
        }


def planarity_torsion_audit(g: Graph, n: int, tree: EmbeddedTree | None = None) -> AuditReport:
    """Compare planarity with torsion in H_1(B_n).

    At n = 2 planarity is equivalent to torsion-freeness; for n >= 3 only
    "non-planar implies torsion" is checked.
    """
    _require_connected(g)
    planar = is_planar(g)
    if tree is not None:
        t, kind = tree, "given"
    elif planar and n == 2:
        t, kind = planar_walk_tree(subdivide_for_index(g, n, STRICT)), "PlanarWalk"
    else:
        t, kind = _default_tree(g, n), VALENCY2_ENDS
    mc = build_morse_complex(t, n, maxdim=2, check=False)
    tors = mc.homology(1).torsion
    if n == 2:
        ok = planar == (not tors)
        stmt = "planar iff torsion-free"
    else:
        ok = planar or bool(tors)
        stmt = "non-planar implies torsion"
    return AuditReport(n, planar, tors, kind, ok, stmt)
