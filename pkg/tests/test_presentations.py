import pytest

from corpus import bouquet, general_tree
from graphbraid.config_complex import critical_cells
from graphbraid.errors import NotCommutatorRelated, ScriptStepInapplicable
from graphbraid.exact_algebra import abelianize, invariant_factors
from graphbraid.fixtures import fixture_tree
from graphbraid.morse_engine import build_morse_complex
from graphbraid.presentations import (
    GroupPresentation,
    TietzeStep,
    eliminate,
    eliminate_unimodular,
    introduce,
    is_commutator_related,
    named_script,
    phi_matrix,
    presentation,
    raag_presentation_linear_star_bouquet,
    rewritten_boundary,
    tietze_simplify,
)


def h1(p: GroupPresentation):
    f = invariant_factors(p.relation_matrix(), p.rank) if p.relators else []
    return p.rank - len(f), [x for x in f if x > 1]


@pytest.mark.parametrize("seed", range(8))
def test_abelianised_relators_are_the_morse_boundary(seed):
    t = general_tree(seed, 3)
    mc = build_morse_complex(t, 3, maxdim=2)
    M = mc.matrix(2)
    gens = mc.bases[1]
    for j, c in enumerate(mc.bases[2]):
        w = rewritten_boundary(t, c)
        idx = {g: i for i, g in enumerate(gens)}
        col = abelianize([(idx[g], e) for g, e in w], len(gens))
        assert col == [M[i][j] for i in range(len(gens))]


@pytest.mark.parametrize("seed", range(8))
def test_presentation_h1_matches_morse_h1(seed):
    t = general_tree(seed, 2) if seed % 2 else bouquet(seed, 3, False)
    n = 2 if seed % 2 else 3
    p = presentation(t, n)
    h = build_morse_complex(t, n, maxdim=2).homology(1)
    assert h1(p) == (h.betti, h.torsion)
    q = eliminate_unimodular(p)
    assert h1(q) == (h.betti, h.torsion)
    assert q.rank <= p.rank


@pytest.mark.parametrize("name,script,n", [("S0", "s0", 4), ("Theta", "theta", 4), ("T3", "t3", 3)])
def test_named_scripts_preserve_h1_and_commute(name, script, n):
    t = fixture_tree(name, n)
    p = presentation(t, n)
    q = tietze_simplify(p, named_script(script, t, n))
    assert h1(q) == h1(p)
    assert is_commutator_related(q)
    assert phi_matrix(q).rank >= 0
    assert len(q.log) >= 1


def test_empty_policy_is_identity():
    t = fixture_tree("S0", 3)
    p = presentation(t, 3)
    q = tietze_simplify(p, [])
    assert q.relators == p.relators and q.generators == p.generators


def test_elimination_and_introduction():
    p = GroupPresentation(["a", "b", "c"], [((0, 1), (1, 1), (2, -1))], ["r"], ["a", "b", "c"])
    q = eliminate(p, "c")
    assert q.names == ["a", "b"] and q.relators == []
    r = introduce(q, "x", [("a", 1), ("b", 1)], target="a")
    assert r.names == ["b", "x"]
    with pytest.raises(ScriptStepInapplicable):
        eliminate(p, "z")
    with pytest.raises(ScriptStepInapplicable):
        tietze_simplify(p, [TietzeStep("shuffle")])


def test_phi_needs_commutator_relators():
    p = GroupPresentation(["a"], [((0, 1), (0, 1))], ["r"], ["a"])
    assert not is_commutator_related(p)
    with pytest.raises(NotCommutatorRelated):
        phi_matrix(p)


def test_star_bouquet_presentation_is_commutator_related():
    for seed in range(6):
        for n in (2, 3):
            t = bouquet(seed, n, True)
            p = raag_presentation_linear_star_bouquet(t, n)
            assert is_commutator_related(p)
            assert p.rank == len(critical_cells(t, n, 1))
            # every relator is a commutator of two generators
            assert all(len(r) == 4 for r in p.relators)
