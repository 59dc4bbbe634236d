"""Exact Gaussian elimination over the rationals.

Matrices are lists of rows of exact rationals (:data:`~weilcalc.poly.Scalar`).  Sizes here are
at most a few hundred, so dense elimination is adequate.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .poly import Scalar

Matrix = List[List[Scalar]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Scalar(x) for x in row] for row in rows]


def transpose(rows: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*rows)] if rows else []


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = to_matrix(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """A basis (as vectors) of ``{v : rows . v = 0}``."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Scalar(0)] * ncols
        v[f] = Scalar(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Scalar(0)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> List[Scalar]:
    return [sum((x * y for x, y in zip(row, v)), Scalar(0)) for row in a]


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not vectors:
        return not any(v)
    return rank(list(vectors) + [list(v)]) == rank(vectors)


def left_inverse(cols: Sequence[Sequence], nrows: int) -> Matrix:
    """For an injective map given by its columns, a matrix ``L`` with ``L.A = I``.

    Raises ``ValueError`` when the columns are dependent.
    """
    ncols = len(cols)
    a = transpose(cols) if cols else [[] for _ in range(nrows)]
    # row reduce [A | I] and read L off the pivot rows
    aug = [list(a[i]) + [Scalar(int(i == j)) for j in range(nrows)] for i in range(nrows)]
    red, pivots = rref(aug, ncols)
    if pivots != list(range(ncols)):
        raise ValueError("map is not injective")
    return [row[ncols:] for row in red[:ncols]]
