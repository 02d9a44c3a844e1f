from __future__ import annotations

from src import linalg
from src.field import field_of_order, get_field


def test_rank_over_f2_and_f3():
    f2 = get_field(2)
    assert linalg.rank(f2, [[1, 1], [1, 1]]) == 1
    assert linalg.rank(f2, [[1, 0], [0, 1]]) == 2
    f3 = get_field(3)
    assert linalg.rank(f3, [[1, 2], [2, 1]]) == 1
    assert linalg.rank(f3, [], 3) == 0
    assert linalg.rank(f3, [[0, 0]]) == 0


def test_solve_and_inconsistency():
    f3 = get_field(3)
    rows = [[1, 1], [0, 1]]
    y = linalg.solve(f3, rows, [2, 1], 2)
    assert y is not None
    assert linalg.matvec(f3, rows, y) == [2, 1]
    assert linalg.solve(f3, [[1, 1], [1, 1]], [0, 1], 2) is None
    assert linalg.solve(f3, [], [], 2) == [0, 0]


def test_null_space_spans_the_kernel():
    f4 = field_of_order("4")
    rows = [[1, 2, 3], [2, 3, 1]]
    basis = linalg.null_space(f4, rows, 3)
    assert len(basis) == 3 - linalg.rank(f4, rows, 3)
    for vec in basis:
        assert linalg.matvec(f4, rows, vec) == [0, 0]
    assert len(linalg.null_space(f4, [], 2)) == 2


def test_row_space_is_the_annihilator_of_the_kernel():
    f5 = get_field(5)
    rows = [[1, 2, 0], [0, 0, 1]]
    kernel = linalg.null_space(f5, rows, 3)
    assert kernel == [[3, 1, 0]]
    # 3·(1, 2, 0) + 4·(0, 0, 1)
    assert linalg.annihilates(f5, kernel, [3, 1, 4])
    assert not linalg.annihilates(f5, kernel, [0, 1, 0])
    assert not linalg.annihilates(f5, linalg.null_space(f5, [], 3), [0, 0, 2])
    assert linalg.annihilates(f5, linalg.null_space(f5, [], 3), [0, 0, 0])
