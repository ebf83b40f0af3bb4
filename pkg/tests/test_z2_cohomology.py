import itertools

import pytest

from corpus import bouquet
from graphbraid.config_complex import critical_cells, enumerate_cells
from graphbraid.errors import PreconditionS0
from graphbraid.exact_algebra import gf2_solve
from graphbraid.fixtures import fixture_tree
from graphbraid.z2_cohomology import (
    Z2Cochain,
    coboundary,
    cocycle_rep,
    cofaces,
    cup,
    cup_cochain,
    cup_graph,
    express,
    flag_and_triangle_check,
    vanishing_precheck,
)

TREES = [(seed, n) for seed in range(6) for n in (2, 3)]


def _tree(seed, n):
    return bouquet(seed, n, seed % 2 == 0)


def solve_against_coboundaries(t, x: Z2Cochain, n: int) -> frozenset:
    """GF(2) oracle: write x as a sum of representatives plus a coboundary."""
    k = x.dimension
    cells = {c: i for i, c in enumerate(enumerate_cells(t, n, k))}

    def mask(support):
        m = 0
        for c in support:
            m ^= 1 << cells[c]
        return m

    crit = critical_cells(t, n, k)
    cols = [mask(cocycle_rep(t, q).support) for q in crit]
    if k > 0:
        for c in enumerate_cells(t, n, k - 1):
            cols.append(mask(set(cofaces(t, c))))
    picked = gf2_solve(cols, mask(x.support))
    return frozenset(crit[i] for i in picked if i < len(crit))


@pytest.mark.parametrize("seed,n", TREES)
def test_representatives_are_cocycles(seed, n):
    t = _tree(seed, n)
    for k in (1, 2):
        for q in critical_cells(t, n, k):
            rep = cocycle_rep(t, q)
            assert q in rep.support
            assert not coboundary(t, rep).support
            assert express(t, rep, n) == {q}


@pytest.mark.parametrize("source", [0, 6, "T1", "T2", "T3"])
def test_cup_products_against_linear_algebra(source):
    n = 3
    t = fixture_tree(source, n) if isinstance(source, str) else _tree(source, n)
    crit = critical_cells(t, n, 1)
    for a, b in itertools.combinations(crit, 2):
        x = cup_cochain(t, a, b, n)
        got = cup(t, a, b, n)
        assert got == cup(t, b, a, n)
        if x.support:
            assert not coboundary(t, x).support
            assert got == solve_against_coboundaries(t, x, n)
        if vanishing_precheck(t, a, b):
            assert not got


def test_s0_graphs_are_refused():
    t = fixture_tree("S0", 3)
    c = critical_cells(t, 3, 1)[0]
    with pytest.raises(PreconditionS0):
        cocycle_rep(t, c)


def test_cup_graph_triangle_check():
    t = _tree(0, 3)
    g = cup_graph(t, 3)
    assert len(g.vertices) == len(critical_cells(t, 3, 1))
    v = flag_and_triangle_check(g, g.triangle_count)
    assert not v.certificate and v.verdict == "Inconclusive"
    assert flag_and_triangle_check(g, g.triangle_count + 1).verdict == "NotRAAG"
