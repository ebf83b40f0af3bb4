import random

import pytest

from corpus import random_graph
from graphbraid.errors import InvalidGraph, NotConnected
from graphbraid.graph_model import (
    MINIMAL,
    STRICT,
    VALENCY2_ENDS,
    Graph,
    bouquet_tree,
    choose_maximal_tree,
    complete_bipartite,
    complete_graph,
    contains_s0,
    contains_subdivision,
    contains_t0,
    essential_arcs,
    girth,
    graph_from_edges,
    is_planar,
    is_sufficiently_subdivided,
    petersen_graph,
    s0_pattern,
    subdivide_for_index,
    t0_pattern,
    wheel_graph,
)


def test_json_round_trip():
    g = graph_from_edges([(0, 1), (1, 2), (2, 0), (0, 0)])
    assert Graph.from_json(g.to_json()) == g


def test_invalid_graphs_are_rejected():
    with pytest.raises(InvalidGraph):
        Graph(2, ((0, 2),))
    with pytest.raises(InvalidGraph):
        Graph(-1, ())
    with pytest.raises(NotConnected):
        subdivide_for_index(graph_from_edges([(0, 1), (2, 3)]), 2)


def test_essential_arcs_of_theta():
    g = graph_from_edges([(0, 2), (2, 1), (0, 3), (3, 1), (0, 1)])
    arcs = essential_arcs(g)
    assert sorted(a.length for a in arcs) == [1, 2, 2]
    assert all({a.start, a.end} == {0, 1} for a in arcs)


@pytest.mark.parametrize("mode", [STRICT, MINIMAL])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_subdivision_is_sufficient_and_keeps_topology(mode, n):
    rng = random.Random(17 * n)
    for _ in range(10):
        g = random_graph(rng)
        h = subdivide_for_index(g, n, mode)
        assert is_sufficiently_subdivided(h, n, mode)
        assert h.is_simple()
        assert girth(h) >= n + 1
        assert h.betti_1() == g.betti_1()
        assert len(essential_arcs(h)) == len(essential_arcs(g))
        # idempotent once sufficient
        assert subdivide_for_index(h, n, mode) == h


def test_known_pattern_containment():
    assert contains_t0(t0_pattern())
    assert contains_s0(s0_pattern())
    assert not contains_s0(t0_pattern())
    assert not contains_t0(s0_pattern())
    assert contains_s0(complete_graph(4))
    assert contains_s0(petersen_graph())
    # a cycle with a single hair has no S0
    assert not contains_s0(graph_from_edges([(0, 1), (1, 2), (2, 0), (0, 3)]))


def test_containment_survives_subdivision():
    rng = random.Random(5)
    for _ in range(15):
        g = random_graph(rng, max_k=5, extra=2)
        h = subdivide_for_index(g, 3, STRICT)
        assert contains_s0(g) == contains_s0(h)
        assert contains_t0(g) == contains_t0(h)


def test_witness_passes_the_independent_check():
    from graphbraid.decision import Certificate, recheck

    for g in (complete_graph(4), petersen_graph(), complete_bipartite(3, 3)):
        hit, w = contains_subdivision(g, s0_pattern(), want_witness=True)
        assert hit
        data = {"branch_map": {str(k): v for k, v in w.branch_map.items()}, "paths": w.paths}
        assert recheck(Certificate("ContainsS0", data), g)
        data["paths"] = w.paths[:-1]
        assert not recheck(Certificate("ContainsS0", data), g)


def test_planarity_agrees_with_kuratowski():
    k5, k33 = complete_graph(5), complete_bipartite(3, 3)
    assert not is_planar(k5) and not is_planar(k33) and not is_planar(petersen_graph())
    assert is_planar(wheel_graph(6)) and is_planar(complete_graph(4))
    rng = random.Random(11)
    for _ in range(25):
        g = random_graph(rng, min_k=4, max_k=6, extra=4)
        kur = contains_subdivision(g, k5) or contains_subdivision(g, k33)
        assert is_planar(g) == (not kur)


def _tree_invariants(t):
    assert t.order[t.base] == 0
    assert all(t.parent[u] < u for u in range(1, t.V))
    assert len(t.tree_edges) == t.V - 1
    assert len(t.deleted) == t.graph.betti_1()
    for tau, iota in t.deleted:
        assert tau < iota
    # clockwise numbering is a depth-first preorder
    for v in range(t.V):
        for w in range(v, t.subtree_end[v] + 1):
            assert v in t.path_to_base(w)


def test_valency2_tree_invariants():
    rng = random.Random(2)
    for _ in range(10):
        g = subdivide_for_index(random_graph(rng), 3, STRICT)
        t = choose_maximal_tree(g, VALENCY2_ENDS)
        _tree_invariants(t)
        assert t.tree_valency(0) == 1
        for tau, iota in t.deleted:
            assert t.graph_valency(tau) == 2 and t.graph_valency(iota) == 2


def test_meet_and_branch():
    rng = random.Random(9)
    t = choose_maximal_tree(subdivide_for_index(random_graph(rng), 2, STRICT), VALENCY2_ENDS)
    for v in range(t.V):
        for w in range(t.V):
            m = t.meet(v, w)
            assert m == t.meet(w, v)
            assert m in t.path_to_base(v) and m in t.path_to_base(w)
            if t.in_subtree(w, v) and w != v:
                k = t.branch(v, w)
                assert 1 <= k <= len(t.children[v])
                assert t.in_subtree(w, t.children[v][k - 1])
            else:
                assert t.branch(v, w) == 0


def test_bouquet_tree_on_star_bouquet():
    # two loops and a hair at one centre
    g = graph_from_edges([(0, 0), (0, 0), (0, 1)])
    t = bouquet_tree(subdivide_for_index(g, 3, STRICT))
    _tree_invariants(t)
    assert len(t.deleted) == 2
