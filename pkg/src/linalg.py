"""Exact linear algebra over F_q on top of galois field arrays.

Matrices are plain lists of rows of encoded field integers; every helper accepts
zero-sized inputs.
"""
from __future__ import annotations

from typing import List, Optional, Sequence

import numpy as np

from .field import FiniteField

Matrix = Sequence[Sequence[int]]


def _array(field: FiniteField, rows: Matrix, ncols: int):
    return field.gf(np.array([list(r) for r in rows], dtype=np.int64).reshape(len(rows), ncols))


def rank(field: FiniteField, rows: Matrix, ncols: Optional[int] = None) -> int:
    width = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    if not rows or width == 0:
        return 0
    if not any(any(r) for r in rows):
        return 0
    return int(np.linalg.matrix_rank(_array(field, rows, width)))


def rref(field: FiniteField, rows: Matrix, ncols: int) -> List[List[int]]:
    if not rows or ncols == 0:
        return [list(r) for r in rows]
    reduced = _array(field, rows, ncols).row_reduce()
    return reduced.view(np.ndarray).tolist()


def solve(field: FiniteField, rows: Matrix, rhs: Sequence[int], ncols: int) -> Optional[List[int]]:
    """One solution y of A·y = rhs (free variables set to zero), or None."""
    if not rows:
        return [0] * ncols
    if ncols == 0:
        return [] if not any(rhs) else None
    augmented = [list(r) + [v] for r, v in zip(rows, rhs)]
    reduced = rref(field, augmented, ncols + 1)
    solution = [0] * ncols
    for row in reduced:
        pivot = next((c for c, v in enumerate(row) if v), None)
        if pivot is None:
            continue
        if pivot == ncols:
            return None
        solution[pivot] = row[ncols]
    return solution


def null_space(field: FiniteField, rows: Matrix, ncols: int) -> List[List[int]]:
    """Basis of {y : A·y = 0}, one vector per free column."""
    if ncols == 0:
        return []
    if not rows or not any(any(r) for r in rows):
        return [[1 if c == k else 0 for c in range(ncols)] for k in range(ncols)]
    reduced = [row for row in rref(field, rows, ncols) if any(row)]
    pivots = [next(c for c, v in enumerate(row) if v) for row in reduced]
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for row, pivot in zip(reduced, pivots):
            vec[pivot] = field.neg(row[free])
        basis.append(vec)
    return basis


def annihilates(field: FiniteField, basis: Sequence[Sequence[int]], vector: Sequence[int]) -> bool:
    """True when every basis vector is orthogonal to ``vector``."""
    return not any(field.dot(vec, vector) for vec in basis)


def matvec(field: FiniteField, rows: Matrix, vector: Sequence[int]) -> List[int]:
    return [field.dot(row, vector) for row in rows]
