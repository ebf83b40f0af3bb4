import random

import pytest

from corpus import random_graph
from graphbraid.decision import (
    IS_RAAG,
    NOT_RAAG,
    UNKNOWN,
    Certificate,
    is_raag,
    phi_rank_deficit,
    planarity_torsion_audit,
    recheck,
    torsion_in_h1,
    triangle_mismatch,
)
from graphbraid.errors import GraphBraidError, NotConnected
from graphbraid.exact_algebra import commutator
from graphbraid.fixtures import fixture_tree
from graphbraid.graph_model import complete_bipartite, complete_graph, graph_from_edges, path_graph

# loops and hairs on a path of branch vertices
LINEAR_STAR_BOUQUET = graph_from_edges([(0, 0), (0, 2), (0, 1), (1, 1), (1, 1), (1, 3), (1, 4)], 5)


def _is_commutator_of_generators(r):
    return len(r) == 4 and any(tuple(r) == commutator([a], [b]) for a in r[:1] for b in r[1:2])


def test_linear_star_bouquet_is_raag():
    v = is_raag(LINEAR_STAR_BOUQUET, 5)
    assert v.verdict == IS_RAAG
    rels = v.presentation.relators
    assert rels and all(_is_commutator_of_generators(r) for r in rels)


def test_s0_at_five_is_not_raag_with_phi_evidence():
    t = fixture_tree("S0", 5)
    v = is_raag(t.graph, 5, tree=t, script="s0")
    assert v.verdict == NOT_RAAG
    assert v.certificate.kind == "ContainsS0"
    assert recheck(v.certificate, t.graph)
    ev = [e for e in v.evidence if e.kind == "PhiRankDeficit"]
    assert ev and (ev[0].data["got"], ev[0].data["need"]) == (3, 4)


def test_s0_at_four_is_unknown_with_presentation():
    t = fixture_tree("S0", 4)
    v = is_raag(t.graph, 4, tree=t, script="s0")
    assert v.verdict == UNKNOWN
    assert v.presentation is not None and v.reason


def test_large_index_is_never_unknown():
    rng = random.Random(8)
    for _ in range(15):
        g = random_graph(rng)
        v = is_raag(g, 5)
        assert v.verdict in (IS_RAAG, NOT_RAAG)
        if v.verdict == NOT_RAAG:
            assert recheck(v.certificate, g)


def test_small_index_torsion_certificate():
    v = is_raag(complete_bipartite(3, 3), 2)
    assert v.verdict == NOT_RAAG and v.certificate.kind == "TorsionInH1"
    assert recheck(v.certificate)


def test_certificates_recheck_from_payload():
    assert recheck(phi_rank_deficit(3, 4)) and not recheck(phi_rank_deficit(4, 4))
    assert recheck(torsion_in_h1([2])) and not recheck(torsion_in_h1([]))
    assert recheck(triangle_mismatch(7, 14)) and not recheck(triangle_mismatch(3, 3))
    assert not recheck(Certificate("ContainsS0", {"branch_map": {}, "paths": []}))


def test_input_errors():
    with pytest.raises(NotConnected):
        is_raag(graph_from_edges([(0, 1), (2, 3)]), 5)
    with pytest.raises(GraphBraidError):
        is_raag(path_graph(3), 1)


@pytest.mark.parametrize(
    "g,n,planar,torsion",
    [
        (complete_graph(4), 2, True, []),
        (complete_bipartite(3, 3), 2, False, [2]),
        (complete_graph(5), 3, False, [2]),
    ],
)
def test_planarity_torsion_audit(g, n, planar, torsion):
    rep = planarity_torsion_audit(g, n)
    assert (rep.planar, rep.torsion, rep.consistent) == (planar, torsion, True)
