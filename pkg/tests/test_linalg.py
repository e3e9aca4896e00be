from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from lielab.linalg import (
    DimensionMismatch,
    Matrix,
    RowSpace,
    SubspaceBasis,
    nullspace,
    rank,
    rref,
    solve_linear,
    subspace_contains,
    subspace_equal,
    subspace_intersect,
    subspace_member,
    subspace_sum,
)
from lielab.scalar import GaussianRational

small = st.integers(-4, 4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(rows)


def test_rref_examples():
    assert rref(Matrix.from_rows([[2, 0], [0, 0]])).to_lists() == [[1, 0], [0, 0]]
    assert rref(Matrix.identity(3)) == Matrix.identity(3)
    assert rref(Matrix.from_rows([[1, 1], [1, 1]])).to_lists() == [[1, 1], [0, 0]]


def test_nullspace_examples():
    assert nullspace(Matrix.zeros(2, 2)).dim == 2
    assert nullspace(Matrix.identity(2)).dim == 0
    ns = nullspace(Matrix.from_rows([[1, 1]]))
    assert ns.basis == ((1, -1),)


def test_subspace_examples():
    e1 = SubspaceBasis.span([(1, 0)], 2)
    assert subspace_equal(e1, SubspaceBasis.span([(2, 0)], 2))
    assert not subspace_equal(e1, SubspaceBasis.span([(0, 1)], 2))
    assert subspace_equal(SubspaceBasis.full(2), nullspace(Matrix.zeros(2, 2)))
    assert subspace_intersect(e1, e1) == e1
    assert subspace_intersect(e1, SubspaceBasis.span([(0, 1)], 2)).dim == 0
    a = SubspaceBasis.span([(1, 0, 0), (0, 1, 0)], 3)
    b = SubspaceBasis.span([(0, 1, 0), (0, 0, 1)], 3)
    assert subspace_intersect(a, b).basis == ((0, 1, 0),)


def test_membership_examples():
    s = SubspaceBasis.span([(1, -1)], 2)
    assert subspace_member(s, (0, 0))
    assert not subspace_member(SubspaceBasis.span([(1, 0)], 2), (1, 1))
    assert subspace_member(s, (3, -3))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        subspace_equal(SubspaceBasis.full(2), SubspaceBasis.full(3))
    with pytest.raises(DimensionMismatch):
        subspace_member(SubspaceBasis.full(2), (1, 2, 3))
    with pytest.raises(DimensionMismatch):
        subspace_intersect(SubspaceBasis.full(2), SubspaceBasis.zero(3))


def test_gaussian_entries():
    i = GaussianRational(0, 1)
    m = Matrix.from_rows([[1, i], [i, -1]])
    assert rank(m) == 1
    ns = nullspace(m)
    assert ns.dim == 1
    assert m @ ns.basis[0] == (0, 0)


def test_solve_linear():
    assert solve_linear([[1, 1], [1, -1]], [2, 0]) == (1, 1)
    assert solve_linear([[1, 1], [1, 1]], [1, 2]) is None
    assert solve_linear([[2]], [1]) == (Fraction(1, 2),)


def test_rowspace_add_reports_growth():
    rs = RowSpace(3)
    assert rs.add([1, 2, 3])
    assert not rs.add([2, 4, 6])
    assert rs.add({2: 5})
    assert rs.rank == 2


@given(matrices())
def test_rref_idempotent(m):
    r = rref(m)
    assert rref(r) == r


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + nullspace(m).dim == m.cols


@given(matrices())
def test_agrees_with_sympy(m):
    sm = sympy.Matrix(m.to_lists())
    assert rank(m) == sm.rank()
    ref, _ = sm.rref()
    assert [list(map(Fraction, map(str, ref.row(i)))) for i in range(ref.rows)] == \
        [list(map(Fraction, r)) for r in rref(m).to_lists()]


@given(matrices(), st.integers(0, 4), st.integers(0, 4), small)
def test_row_operations_keep_nullspace(m, i, j, c):
    rows = m.to_lists()
    i, j = i % m.rows, j % m.rows
    if i != j:
        rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
    assert subspace_equal(nullspace(m), nullspace(Matrix.from_rows(rows)))


@given(matrices(), matrices())
def test_intersection_dimension_formula(a, b):
    n = 5
    sa = SubspaceBasis.span([list(r) + [0] * (n - len(r)) for r in a.to_lists()], n)
    sb = SubspaceBasis.span([list(r) + [0] * (n - len(r)) for r in b.to_lists()], n)
    meet = subspace_intersect(sa, sb)
    assert meet.dim == sa.dim + sb.dim - subspace_sum(sa, sb).dim
    assert subspace_contains(sa, meet) and subspace_contains(sb, meet)


@given(matrices())
def test_nullspace_vectors_are_killed(m):
    for v in nullspace(m).basis:
        assert m @ v == (0,) * m.rows
