"""Exact linear algebra over the rationals.

Just enough row reduction to extract ranks and canonical kernel bases from
small dense systems; everything is `Fraction`-exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple:
    """(reduced row echelon form, pivot column indices).

    Pivots are chosen left to right, first nonzero row wins, so the result is
    deterministic in the input row order.
    """
    mat: List[List[Fraction]] = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(mat)):
            if mat[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def kernel_basis(rows: Sequence[Sequence[Fraction]], ncols: int) -> list:
    """Canonical basis of the null space of the matrix.

    One vector per free column, in ascending free-column order: entry 1 at the
    free column, pivot entries filled in from the reduced rows, zeros
    elsewhere.
    """
    mat, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -mat[r][f]
        basis.append(v)
    return basis


class IncrementalRank:
    """Streaming independence test over the rationals.

    Feeds vectors one at a time; `add` reports whether the vector enlarged the
    span of everything fed so far.
    """

    def __init__(self):
        self._rows: List[List[Fraction]] = []
        self._pivots: List[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, vector: Sequence[Fraction]) -> bool:
        v = [Fraction(x) for x in vector]
        for row, p in zip(self._rows, self._pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        for col, x in enumerate(v):
            if x:
                inv = 1 / x
                self._rows.append([a * inv for a in v])
                self._pivots.append(col)
                return True
        return False
