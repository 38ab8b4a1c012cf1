import os, sys
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
import pytest
from sympy import QQ

from algebra.linear import ExactMatrix, echelon_basis, nullspace, nullspace_of_rows, row_reduce, same_span, span_rank
from utils.error_handler import DimensionMismatchError, InternalConsistencyError


def test_row_reduce_normalizes_pivots():
    reduced, pivots = row_reduce([{0: 2, 1: 4}, {0: 1, 1: 3}])
    assert pivots == [0, 1]
    assert reduced == [{0: QQ(1)}, {1: QQ(1)}]


def test_nullspace_rank_one():
    assert nullspace_of_rows([{0: 1, 1: 2}, {0: 2, 1: 4}], 2) == [(QQ(-2), QQ(1))]
    m = ExactMatrix.from_rows([[1, 2], [2, 4]])
    assert m.rank() == 1
    assert nullspace(m) == [(QQ(-2), QQ(1))]


def test_inverse_and_solve():
    m = ExactMatrix.from_rows([[2, 1], [1, 1]])
    inv = m.inverse()
    assert inv.to_lists() == [[1, -1], [-1, 2]]
    assert m @ inv == ExactMatrix.identity(2)
    assert m.solve([3, 2]) == (QQ(1), QQ(1))


def test_inverse_of_cartan_matrix_has_fractions():
    cartan = ExactMatrix.from_rows([[2, -1], [-1, 2]])
    assert cartan.inverse().to_lists() == [[QQ(2, 3), QQ(1, 3)], [QQ(1, 3), QQ(2, 3)]]


def test_singular_inverse_raises():
    with pytest.raises(InternalConsistencyError):
        ExactMatrix.from_rows([[1, 2], [2, 4]]).inverse()


def test_shape_checks():
    with pytest.raises(DimensionMismatchError):
        ExactMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(DimensionMismatchError):
        ExactMatrix.identity(2) @ ExactMatrix.identity(3)


def test_span_helpers():
    first = [(1, 0, 1), (0, 1, 1)]
    second = [(1, 1, 2), (1, -1, 0)]
    assert span_rank(first + second) == 2
    assert same_span(first, second, 3)
    assert not same_span(first, [(1, 0, 0)], 3)
    assert echelon_basis([(QQ(1, 2), 1, 0)], 3) == [(QQ(1), QQ(2), QQ(0))]


def test_matrix_algebra():
    a = ExactMatrix.from_rows([[0, 1], [0, 0]])
    assert (a ** 2).is_zero()
    assert (a @ a.transpose() - a.transpose() @ a).trace() == 0
    assert a.column(1) == (QQ(1), QQ(0))


def test_rank_plus_nullity_on_random_matrices(rng):
    for _ in range(50):
        rows, cols = rng.randint(1, 5), rng.randint(1, 6)
        data = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
        if rows > 1 and rng.random() < 0.5:
            data[-1] = [x + 2 * y for x, y in zip(data[0], data[1 % rows])]
        m = ExactMatrix.from_rows(data)
        kernel = nullspace(m)
        assert m.rank() + len(kernel) == cols
        assert m.rank() == m.transpose().rank()
        for v in kernel:
            assert not any(m.apply(v))
