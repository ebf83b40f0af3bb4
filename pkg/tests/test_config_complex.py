import pytest

from corpus import bouquet, general_tree
from graphbraid.cli_io import cubical_cell_count
from graphbraid.config_complex import (
    COLLAPSIBLE,
    CRITICAL,
    Cell,
    cell_name,
    classify,
    count_cells,
    critical_cells,
    decode_a_notation,
    encode_a_notation,
    enumerate_cells,
    is_blocked,
    is_order_respecting,
    parse_cell,
)
from graphbraid.errors import EdgeNotInCell, InconsistentNotation, VertexNotInCell
from graphbraid.fixtures import fixture_tree


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("n", [2, 3])
def test_cell_census_matches_brute_force(seed, n):
    t = general_tree(seed, n)
    for k in range(n + 1):
        assert count_cells(t, n, k) == cubical_cell_count(t.graph, n, k)
        assert len(list(enumerate_cells(t, n, k))) == count_cells(t, n, k)


def test_single_critical_zero_cell():
    for seed in range(5):
        t = general_tree(seed, 3)
        assert critical_cells(t, 3, 0) == [Cell((), (0, 1, 2))]


@pytest.mark.parametrize("name", ["S0", "Theta", "T3"])
def test_names_round_trip(name):
    t = fixture_tree(name, 3)
    for k in range(4):
        for c in critical_cells(t, 3, k):
            assert parse_cell(t, cell_name(t, c)) == c


def test_parse_cell_ignores_element_order():
    t = fixture_tree("S0", 3)
    for c in critical_cells(t, 3, 1):
        parts = cell_name(t, c)[1:-1].split(",")
        assert parse_cell(t, "{" + ",".join(reversed(parts)) + "}") == c


def test_critical_cells_are_critical():
    for seed in range(6):
        t = bouquet(seed, 3, True)
        for k in range(4):
            assert all(classify(t, c).tag == CRITICAL for c in critical_cells(t, 3, k))


def test_a_notation_round_trip():
    checked = 0
    for seed in range(10):
        for t in (general_tree(seed, 3), bouquet(seed, 3, False)):
            for k in range(4):
                for c in critical_cells(t, 3, k):
                    try:
                        a = encode_a_notation(t, c)
                    except InconsistentNotation:
                        continue
                    assert decode_a_notation(a, t, 3) == c
                    checked += 1
    assert checked > 100


def test_a_notation_rejects_noncritical():
    t = general_tree(0, 2)
    c = next(c for c in enumerate_cells(t, 2, 1) if classify(t, c).tag == COLLAPSIBLE)
    with pytest.raises(InconsistentNotation):
        encode_a_notation(t, c)


def test_predicates_reject_foreign_elements():
    t = general_tree(1, 2)
    c = Cell((), (0, 1))
    assert is_blocked(t, 0, c)
    with pytest.raises(VertexNotInCell):
        is_blocked(t, 3, c)
    with pytest.raises(EdgeNotInCell):
        is_order_respecting(t, 2, c)
