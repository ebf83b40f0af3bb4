"""Randomised property suites over seeded graph families (500 cases each)."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import bouquet, general_tree
from graphbraid.config_complex import (
    COLLAPSIBLE,
    CRITICAL,
    REDUNDANT,
    Cell,
    classify,
    collapsible_by_induction,
    count_cells,
    critical_cells,
    inverse_W,
    matching_W,
    occupied,
)
from graphbraid.morse_engine import V_e, is_simply_unblocked, morse_boundary, rewriter

CASES = settings(max_examples=500)


def random_cell(t, n: int, dim: int, rng: random.Random):
    """A uniformly drawn-ish cell: disjoint edges first, then free vertices."""
    codes = list(t.edge_codes())
    for _ in range(50):
        es, used = [], set()
        rng.shuffle(codes)
        for e in codes:
            if len(es) == dim:
                break
            ends = set(t.ends(e))
            if not ends & used:
                es.append(e)
                used |= ends
        if len(es) < dim:
            continue
        free = [v for v in range(t.V) if v not in used]
        if len(free) < n - dim:
            continue
        vs = rng.sample(free, n - dim)
        return Cell(tuple(sorted(es, key=t.iota)), tuple(sorted(vs)))
    return None


def draw_case(data, dims):
    kind = data.draw(st.booleans())
    seed = data.draw(st.integers(0, 59))
    n = data.draw(st.integers(2, 4))
    t = general_tree(seed, n) if kind else bouquet(seed, n, seed % 2 == 0)
    dim = data.draw(st.sampled_from(dims))
    rng = random.Random(data.draw(st.integers(0, 2**32 - 1)))
    return t, n, dim, rng


def _clean(x: dict) -> dict:
    return {k: v for k, v in x.items() if v}


@CASES
@given(st.data())
def test_rewriting_invariant_under_adjacent_shift(data):
    t, n, _, rng = draw_case(data, [1])
    rw = rewriter(t)
    for _ in range(20):
        c = random_cell(t, n, 1, rng)
        if c is None:
            continue
        occ = occupied(t, c)
        cands = [v for v in c.vertices if v != 0 and t.parent[v] not in occ and v - t.parent[v] == 1]
        if cands:
            v = rng.choice(cands)
            assert rw.word(c) == rw.word(V_e(t, c, v))
            return


@CASES
@given(st.data())
def test_chain_rewriting_invariant_under_simple_shift(data):
    t, n, dim, rng = draw_case(data, [0, 1, 2])
    rw = rewriter(t)
    for _ in range(20):
        c = random_cell(t, n, dim, rng)
        if c is None or classify(t, c).tag != REDUNDANT:
            continue
        occ = occupied(t, c)
        cands = [v for v in c.vertices if is_simply_unblocked(t, c, v, occ)]
        if cands:
            v = rng.choice(cands)
            assert _clean(rw.chain(c)) == _clean(rw.chain(V_e(t, c, v)))
            return


@CASES
@given(st.data())
def test_morse_boundary_squares_to_zero(data):
    t, n, dim, rng = draw_case(data, [2, 3])
    dim = min(dim, n)
    crit = critical_cells(t, n, dim)
    if not crit:
        return
    c = rng.choice(crit)
    total: dict = {}
    for f, a in morse_boundary(t, c).items():
        for g, b in morse_boundary(t, f).items():
            total[g] = total.get(g, 0) + a * b
    assert not _clean(total)


@CASES
@given(st.data())
def test_matching_is_a_bijection(data):
    t, n, dim, rng = draw_case(data, [0, 1, 2])
    for _ in range(10):
        c = random_cell(t, n, dim, rng)
        if c is None:
            continue
        tag = classify(t, c).tag
        if tag == REDUNDANT:
            w = matching_W(t, c)
            assert classify(t, w).tag == COLLAPSIBLE
            assert inverse_W(t, w) == c
        elif tag == COLLAPSIBLE:
            r = inverse_W(t, c)
            assert classify(t, r).tag == REDUNDANT
            assert matching_W(t, r) == c
        else:
            assert tag == CRITICAL
        assert (tag == COLLAPSIBLE) == collapsible_by_induction(t, c)


@CASES
@given(st.integers(0, 99), st.integers(2, 4), st.booleans())
def test_euler_characteristic_matches_critical_census(seed, n, kind):
    t = general_tree(seed, n) if kind else bouquet(seed, n, seed % 2 == 0)
    full = sum((-1) ** k * count_cells(t, n, k) for k in range(n + 1))
    crit = sum((-1) ** k * len(critical_cells(t, n, k)) for k in range(n + 1))
    assert full == crit
