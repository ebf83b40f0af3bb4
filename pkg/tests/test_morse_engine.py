import pytest

from corpus import bouquet, general_tree
from graphbraid.cli_io import _cubical_boundary, oracle_cubical_homology
from graphbraid.config_complex import Cell, enumerate_cells
from graphbraid.errors import BudgetExceeded, TooFewVertices
from graphbraid.graph_model import graph_from_edges
from graphbraid.morse_engine import (
    build_morse_complex,
    cubical_boundary,
    cubical_boundary_chain,
    rewrite_chain,
    stabilized_V,
)


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("n", [2, 3])
def test_morse_homology_matches_cubical_oracle(seed, n):
    t = general_tree(seed, n) if seed % 2 else bouquet(seed, n, True)
    mc = build_morse_complex(t, n)
    for k in range(n + 1):
        got = mc.homology(k)
        want = oracle_cubical_homology(t.graph, n, k)
        assert (got.betti, got.torsion) == (want.betti, want.torsion)


def test_connected_configuration_space():
    t = general_tree(3, 3)
    assert build_morse_complex(t, 3).homology(0).betti == 1


def test_cubical_boundary_squares_to_zero():
    t = general_tree(4, 3)
    for c in enumerate_cells(t, 3, 2):
        assert not cubical_boundary_chain(t, cubical_boundary(t, c))


def test_oracle_boundary_agrees_with_tree_boundary():
    # same cube orientation in both, up to relabelling
    t = general_tree(2, 2)
    lab = t.label
    for c in enumerate_cells(t, 2, 1):
        e = c.edges[0]
        a, b = lab[t.tau(e)], lab[t.iota(e)]
        ids = [i for i, x in enumerate(t.graph.edges) if set(x) == {a, b}]
        cell = ((ids[0],), tuple(sorted(lab[v] for v in c.vertices)))
        ours = {tuple(sorted(lab[v] for v in f.vertices)): s for f, s in cubical_boundary(t, c).items()}
        theirs = {vs: s for (_, vs), s in _cubical_boundary(t.graph, cell).items()}
        if t.graph.edges[ids[0]] == (a, b):
            theirs = {k: -s for k, s in theirs.items()}
        assert ours == theirs


def test_rewriting_fixes_critical_and_kills_collapsible():
    t = general_tree(5, 3)
    mc = build_morse_complex(t, 3)
    for k in range(4):
        for c in mc.bases[k]:
            assert rewrite_chain(t, c) == {c: 1}
    c = Cell((), (0, 1, 2))
    assert stabilized_V(t, Cell((), (0, 1, t.V - 1))) == c


def test_errors():
    t = general_tree(0, 2)
    with pytest.raises(TooFewVertices):
        build_morse_complex(t, t.V + 1)
    with pytest.raises(BudgetExceeded):
        oracle_cubical_homology(t.graph, 2, 1, budget=3)
    with pytest.raises(ValueError):
        build_morse_complex(t, 3, maxdim=1).homology(1)
    assert oracle_cubical_homology(graph_from_edges([(0, 1)]), 3, 0).betti == 0
