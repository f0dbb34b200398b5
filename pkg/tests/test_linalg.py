import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matquot.errors import DimensionMismatch, FieldMismatch, RankDeficient
from matquot.linalg import (
    GF,
    QQ,
    ExactMatrix,
    Field,
    ModP,
    annihilator,
    in_span,
    is_subspace,
    plucker,
    projectively_equal,
    same_row_space,
    subspace_intersection,
    subspace_sum,
)

small = st.fractions(min_value=-9, max_value=9, max_denominator=5)


def matrices(rows, cols, elements=small):
    return st.lists(st.lists(elements, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def leibniz(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = Fraction(-1) ** inversions
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_det_matches_leibniz(rows):
    assert ExactMatrix.from_rows(rows).det() == leibniz(rows)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: matrices(r, c))))
def test_rref_idempotent_and_kernel(rows):
    A = ExactMatrix.from_rows(rows)
    R, piv = A.rref()
    R2, piv2 = R.rref()
    assert R2 == R and piv2 == piv
    K = A.kernel()
    assert K.cols == A.cols - A.rank()
    assert (A @ K).is_zero()
    assert A.rank() + A.left_kernel().rows == A.rows


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: matrices(r, c))), st.data())
def test_solve_residual_is_zero(rows, data):
    A = ExactMatrix.from_rows(rows)
    x0 = data.draw(st.lists(small, min_size=A.cols, max_size=A.cols))
    b = A.apply(x0)
    x, dim = A.solve(b)
    assert x is not None
    assert A.apply(x) == b
    assert dim == A.cols - A.rank()


def test_inconsistent_system():
    A = ExactMatrix.from_rows([[1, 0], [1, 0]])
    assert A.solve([1, 2]) == (None, -1)


@settings(max_examples=60, deadline=None)
@given(matrices(2, 4, st.integers(-20, 20)))
def test_three_term_plucker_relation(rows):
    A = ExactMatrix.from_rows(rows)
    if A.rank() < 2:
        return
    p = plucker(A, normalize=False)
    assert p[(0, 1)] * p[(2, 3)] - p[(0, 2)] * p[(1, 3)] + p[(0, 3)] * p[(1, 2)] == 0


def test_plucker_normalization_and_invariance():
    A = ExactMatrix.from_rows([[1, 2, 3, 4], [0, 1, 5, 7]])
    g = ExactMatrix.from_rows([[2, 1], [1, 3]])
    p, q = plucker(A), plucker(g @ A)
    assert p == q
    assert next(v for v in p.values() if v) == 1
    assert projectively_equal(plucker(A, normalize=False), plucker(g @ A, normalize=False))
    with pytest.raises(RankDeficient):
        plucker(ExactMatrix.from_rows([[1, 2], [2, 4]]))


def test_big_numbers_stay_exact():
    big = 2 ** 200 + 1
    A = ExactMatrix.from_rows([[big, 1], [3, Fraction(1, big)]])
    assert A.det() == 1 - 3
    B = ExactMatrix.from_rows([[Fraction(big, 3), big + 2], [big - 5, Fraction(7, big)]])
    assert B.det() == leibniz([[Fraction(big, 3), big + 2], [big - 5, Fraction(7, big)]])


def test_subspace_operations():
    A = ExactMatrix.from_rows([[1, 0, 0], [0, 1, 0]])
    B = ExactMatrix.from_rows([[0, 1, 0], [0, 0, 1]])
    I = subspace_intersection([A, B])
    assert same_row_space(I, ExactMatrix.from_rows([[0, 1, 0]]))
    assert subspace_sum([A, B]).rank() == 3
    assert is_subspace(I, A) and is_subspace(I, B)
    assert in_span(A, [3, 4, 0]) and not in_span(A, [0, 0, 1])
    assert (A @ annihilator(A).T).is_zero()


def test_intersection_of_disjoint_lines_is_zero():
    I = subspace_intersection([ExactMatrix.from_rows([[1, 0]]), ExactMatrix.from_rows([[0, 1]])])
    assert I.rows == 0


def test_prime_field_arithmetic():
    F = GF(5)
    a, b = F(3), F(4)
    assert a + b == F(2)
    assert a * b == F(2)
    assert a / b == F(2)
    assert F(Fraction(1, 2)) == F(3)
    with pytest.raises(ZeroDivisionError):
        a / F(0)
    with pytest.raises(FieldMismatch):
        a + GF(7)(1)
    with pytest.raises(ValueError):
        Field(6)


def test_prime_field_rank_differs_from_rational():
    rows = [[1, 1], [1, -1]]
    assert ExactMatrix.from_rows(rows).rank() == 2
    assert ExactMatrix.from_rows(rows, GF(2)).rank() == 1


def test_dimension_errors():
    A = ExactMatrix.from_rows([[1, 2]])
    with pytest.raises(DimensionMismatch):
        A @ A
    with pytest.raises(DimensionMismatch):
        A.det()
    with pytest.raises(FieldMismatch):
        A.vstack(ExactMatrix.from_rows([[1, 2]], GF(3)))


def test_constructors():
    A = ExactMatrix.from_columns([[1, 2], [3, 4], [5, 6]])
    assert (A.rows, A.cols) == (2, 3)
    assert A.T.T == A
    assert ExactMatrix.identity(3).det() == 1
    assert ExactMatrix.zeros(2, 3).is_zero()
    assert ExactMatrix.from_columns([], rows=3).rows == 3
    assert ModP(3, 5) == 8
    assert QQ("1/3") == Fraction(1, 3)
