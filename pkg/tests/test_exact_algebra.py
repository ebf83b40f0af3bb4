import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from graphbraid.errors import NoSolution
from graphbraid.exact_algebra import (
    Lattice,
    abelianize,
    commutator,
    cyclic_equal,
    determinant,
    free_reduce,
    gf2_nullspace,
    gf2_rank,
    gf2_solve,
    homology,
    invariant_factors,
    lambda2_vector,
    matmul,
    rank,
    smith_normal_form,
)

matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def _sympy_factors(A):
    S = sympy_snf(Matrix(A), domain=ZZ)
    return [abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0]


@settings(max_examples=200)
@given(matrices)
def test_invariant_factors_match_sympy(A):
    assert invariant_factors(A) == _sympy_factors(A)


@settings(max_examples=200)
@given(matrices)
def test_smith_normal_form_is_a_factorisation(A):
    S, U, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == S
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    for i, row in enumerate(S):
        for j, x in enumerate(row):
            assert i == j or x == 0
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=100)
@given(matrices)
def test_rank_matches_sympy(A):
    assert rank(A) == Matrix(A).rank()


def test_determinant_matches_sympy():
    rng = random.Random(3)
    for _ in range(30):
        k = rng.randint(1, 5)
        A = [[rng.randint(-5, 5) for _ in range(k)] for _ in range(k)]
        assert determinant(A) == Matrix(A).det()


def test_homology_of_a_circle_and_projective_plane():
    # circle: one vertex, one edge with zero boundary
    assert homology([[0]], [], 1, 1).betti == 1
    # RP2: H1 from a single 2-cell attached by degree 2
    h = homology([[0]], [[2]], 1, 1)
    assert (h.betti, h.torsion) == (0, [2])


def test_lattice_membership():
    lat = Lattice([{0: 2, 1: 1}, {1: 3}])
    assert lat.rank == 2
    assert lat.contains({0: 2, 1: 4})
    assert not lat.contains({0: 1})
    assert not lat.contains({1: 1})
    assert lat.contains({})


def test_gf2_solve_and_nullspace():
    cols = [0b011, 0b110, 0b101]
    assert gf2_rank(cols) == 2
    x = gf2_solve(cols, 0b101)
    acc = 0
    for i in x:
        acc ^= cols[i]
    assert acc == 0b101
    with pytest.raises(NoSolution):
        gf2_solve([0b011], 0b100)
    rows = [[1, 1, 0], [0, 1, 1]]
    for v in gf2_nullspace(rows, 3):
        bits = [v >> i & 1 for i in range(3)]
        assert all(sum(a * b for a, b in zip(r, bits)) % 2 == 0 for r in rows)


def test_words():
    a, b = (0, 1), (1, 1)
    assert free_reduce([a, (0, -1), b]) == (b,)
    c = commutator([a], [b])
    assert abelianize(c, 2) == [0, 0]
    assert cyclic_equal(c, c[1:] + c[:1])
    v = lambda2_vector(c, 2)
    assert {k: x for k, x in v.items() if x} and len([x for x in v.values() if x]) == 1
    assert not any(lambda2_vector(free_reduce([a, b, (1, -1), (0, -1)]), 2).values())
