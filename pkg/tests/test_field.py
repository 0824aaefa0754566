import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from unitcodes.core import GfMatrix, PrimeField

PRIMES = [2, 3, 5, 7, 11]


@st.composite
def gf_matrices(draw, max_rows=5, max_cols=6):
    r = draw(st.sampled_from(PRIMES))
    rows = draw(st.integers(min_value=1, max_value=max_rows))
    cols = draw(st.integers(min_value=1, max_value=max_cols))
    entries = draw(st.lists(
        st.lists(st.integers(min_value=0, max_value=r - 1), min_size=cols, max_size=cols),
        min_size=rows, max_size=rows,
    ))
    return GfMatrix.from_rows(r, entries)


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeField(1)


def test_inverse_example():
    assert PrimeField(7).inverse(3) == 5
    assert PrimeField(2).inverse(1) == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        PrimeField(5).inverse(10)


@given(st.sampled_from(PRIMES + [61, 97]), st.integers(min_value=1, max_value=10 ** 4))
def test_inverse_property(r, a):
    if a % r:
        assert (a * PrimeField(r).inverse(a)) % r == 1


def test_entries_are_reduced():
    matrix = GfMatrix.from_rows(3, [[4, 5, -1]])
    assert matrix.to_lists() == [[1, 2, 2]]
    assert matrix.entries == [1, 2, 2]


def test_to_array_returns_a_copy():
    matrix = GfMatrix.identity(2, 2)
    array = matrix.to_array()
    array[0, 0] = 0
    assert matrix.to_lists() == [[1, 0], [0, 1]]


def test_rank_depends_on_field():
    rows = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    assert GfMatrix.from_rows(2, rows).rank() == 2
    assert GfMatrix.from_rows(3, rows).rank() == 3


def test_identity_and_zero_rank():
    assert GfMatrix.identity(5, 4).rank() == 4
    assert GfMatrix.zeros(5, 3, 4).rank() == 0


def test_rref_example():
    reduced, pivots = GfMatrix.from_rows(3, [[0, 2, 1], [1, 1, 1]]).rref()
    assert pivots == [0, 1]
    assert reduced.to_lists() == [[1, 0, 2], [0, 1, 2]]


@given(gf_matrices())
def test_rref_is_reduced(matrix):
    reduced, pivots = matrix.rref()
    array = reduced.to_array()
    assert pivots == sorted(pivots)
    for row, col in enumerate(pivots):
        column = array[:, col]
        assert column[row] == 1
        assert np.count_nonzero(column) == 1
    assert not array[len(pivots):].any()


@given(gf_matrices())
def test_row_basis_spans_same_space(matrix):
    basis = matrix.row_basis()
    assert basis.rows == matrix.rank()
    stacked = GfMatrix(matrix.field, np.vstack([basis.to_array(), matrix.to_array()]))
    assert stacked.rank() == basis.rows


@given(gf_matrices())
def test_nullspace_rank_nullity(matrix):
    null = matrix.nullspace()
    assert null.rows == matrix.cols - matrix.rank()
    assert null.rank() == null.rows
    product = matrix.to_array() @ null.to_array().T
    assert not (product % matrix.r).any()


@given(gf_matrices())
def test_transpose_preserves_rank(matrix):
    assert matrix.transpose().rank() == matrix.rank()


@given(gf_matrices(), st.data())
@settings(max_examples=50)
def test_row_scaling_preserves_rank(matrix, data):
    factors = data.draw(st.lists(
        st.integers(min_value=1, max_value=matrix.r - 1), min_size=matrix.rows, max_size=matrix.rows,
    ))
    assert matrix.scale_rows(factors).rank() == matrix.rank()


def test_multiply_by_identity():
    matrix = GfMatrix.from_rows(5, [[1, 2, 3], [4, 0, 1]])
    assert matrix.multiply(GfMatrix.identity(5, 3)) == matrix


def test_multiply_rejects_mixed_fields():
    with pytest.raises(ValueError):
        GfMatrix.identity(2, 2).multiply(GfMatrix.identity(3, 2))


def test_columns_dependent():
    matrix = GfMatrix.from_rows(2, [[1, 0, 1, 0], [0, 1, 1, 0]])
    assert matrix.columns_dependent([0, 1, 2])
    assert not matrix.columns_dependent([0, 1])
    assert matrix.columns_dependent([3])
    assert not matrix.columns_dependent([])


def test_columns_dependent_validates_indices():
    matrix = GfMatrix.identity(3, 3)
    with pytest.raises(ValueError):
        matrix.columns_dependent([0, 0])
    with pytest.raises(IndexError):
        matrix.columns_dependent([3])


def test_zero_row_matrix_keeps_columns():
    matrix = GfMatrix.from_rows(2, [], cols=4)
    assert (matrix.rows, matrix.cols) == (0, 4)
    assert matrix.nullspace().rows == 4


@pytest.mark.parametrize("r,rows,reduced,pivots", [
    (5, [[2, 4], [1, 2]], [[1, 2], [0, 0]], [0]),
    (3, [[0, 1], [1, 0]], [[1, 0], [0, 1]], [0, 1]),
])
def test_rref_small_examples(r, rows, reduced, pivots):
    result, found = GfMatrix.from_rows(r, rows).rref()
    assert result.to_lists() == reduced
    assert found == pivots


@given(gf_matrices())
def test_rref_is_idempotent(matrix):
    reduced, pivots = matrix.rref()
    again, again_pivots = reduced.rref()
    assert again == reduced
    assert again_pivots == pivots
