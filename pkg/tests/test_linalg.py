import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from etastar.linalg import (DimensionMismatch, Gf2Matrix, Subspace, dot, gf2_rank, in_span,
                            nullspace, orthogonal_complement_basis, primitive, project_off,
                            rank_rational, rref)

small = st.integers(-4, 4)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=0, max_size=max_rows))


def test_identity_rank():
    assert rank_rational([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3


def test_proportional_rows():
    assert rank_rational([[1, 1], [2, 2]]) == 1


def test_cube_rows_rank():
    # sympy is the oracle here; the value was frozen after it agreed.
    rows = [(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)]
    assert sympy.Matrix(rows).rank() == 3
    assert rank_rational(rows) == 3


def test_empty_rank_is_zero():
    assert rank_rational([]) == 0


def test_ragged_rows_rejected():
    with pytest.raises(DimensionMismatch):
        rank_rational([[1, 2], [1]])


def test_in_span_examples():
    assert in_span((0, 0), [(1, 0)])
    assert not in_span((1, 1), [(1, 0)])
    assert in_span((1, -1, -1), [(1, 1, 1), (1, 0, 0)])


def test_in_span_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        in_span((1, 2, 3), [(1, 0)])


def test_project_off_zero_direction():
    with pytest.raises(ValueError):
        project_off((1, 2), (0, 0))


def test_project_off_value():
    assert project_off((1, 0), (1, 1)) == (Fraction(1, 2), Fraction(-1, 2))


@given(matrices())
def test_rank_matches_sympy(rows):
    expected = sympy.Matrix(rows).rank() if rows else 0
    assert rank_rational(rows) == expected


@given(matrices(), st.integers(0, 10**6))
def test_rank_permutation_and_scaling_invariant(rows, seed):
    r = random.Random(seed)
    k = rank_rational(rows)
    shuffled = rows[:]
    r.shuffle(shuffled)
    assert rank_rational(shuffled) == k
    # one factor per row, not per entry
    scaled = [[x * f for x in row] for row, f in
              zip(rows, [Fraction(r.choice([-5, -1, 3]), r.randint(1, 7)) for _ in rows])]
    assert rank_rational(scaled) == k


@given(st.integers(1, 6).flatmap(lambda m: st.tuples(
    st.lists(small, min_size=m, max_size=m), st.lists(small, min_size=m, max_size=m))))
def test_project_off_is_orthogonal(vw):
    v, w = vw
    if not any(w):
        w = [1] + w[1:]
    assert dot(project_off(v, w), w) == 0


@given(st.integers(1, 6).flatmap(lambda m: st.tuples(
    st.lists(st.lists(small, min_size=m, max_size=m), min_size=1, max_size=m),
    st.lists(small, min_size=m, max_size=m))))
def test_in_span_matches_linear_solve(case):
    basis, v = case
    A = sympy.Matrix(basis).T
    b = sympy.Matrix(v)
    solvable = True
    try:
        A.gauss_jordan_solve(b)
    except ValueError:
        solvable = False
    assert in_span(v, basis) == solvable


@given(st.lists(st.lists(st.integers(0, 1), min_size=7, max_size=7), min_size=1, max_size=9))
def test_gf2_rank_bounds_and_transpose(rows):
    M = Gf2Matrix.from_lists(rows)
    r = gf2_rank(M)
    assert r <= min(M.nrows, M.ncols)
    assert r == gf2_rank(M.transpose())


def test_gf2_rank_differs_from_rational():
    # rows of a 3-cycle incidence: dependent mod 2, independent over Q
    rows = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    assert gf2_rank(Gf2Matrix.from_lists(rows)) == 2
    assert rank_rational(rows) == 3


@given(matrices(max_rows=4, max_cols=5))
def test_nullspace_is_orthogonal_complement_of_rows(rows):
    if not rows:
        return
    width = len(rows[0])
    ns = nullspace(rows, width)
    assert len(ns) == width - rank_rational(rows)
    for v in ns:
        assert all(dot(r, v) == 0 for r in rows)


def test_orthogonal_complement_basis_pairwise_orthogonal():
    B = orthogonal_complement_basis((1, 2, 3, 4))
    assert len(B) == 3
    for i, a in enumerate(B):
        assert dot(a, (1, 2, 3, 4)) == 0
        for b in B[i + 1:]:
            assert dot(a, b) == 0


def test_subspace_key_is_basis_independent():
    a = Subspace.span([(1, 1, 0), (0, 1, 1)], 3)
    b = Subspace.span([(1, 2, 1), (1, 0, -1)], 3)
    assert a.key() == b.key() and a.dim == 2
    assert a.contains((2, 3, 1)) and not a.contains((1, 0, 0))


def test_rref_pivots():
    basis, pivots = rref([(2, 4), (1, 2)])
    assert pivots == [0] and basis == [(1, 2)]


def test_primitive():
    assert primitive((Fraction(1, 2), Fraction(-3, 4))) == (2, -3)
