"""Exact linear algebra over Q: determinants and nullspaces.

Rows are scaled to integers and reduced with Bareiss' fraction-free
elimination, so every intermediate entry is an integer minor of the input and
every division is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Sequence


def _integer_rows(rows: Sequence[Sequence]) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; returns the rows and the product of the scales."""
    out = []
    scale = Fraction(1)
    for row in rows:
        row = [Fraction(v) for v in row]
        d = reduce(math.lcm, (v.denominator for v in row), 1)
        out.append([int(v * d) for v in row])
        scale *= d
    return out, scale


def _pick_pivot(A: list[list[int]], col: int, start: int) -> int | None:
    best, best_size = None, None
    for i in range(start, len(A)):
        v = A[i][col]
        if v:
            size = abs(v).bit_length()
            if best is None or size < best_size:
                best, best_size = i, size
    return best


def _bareiss(A: list[list[int]]) -> tuple[list[int], int]:
    """In-place fraction-free row echelon form.

    Returns the pivot columns and the number of row swaps performed.
    """
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    prev = 1
    r = 0
    pivots = []
    swaps = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = _pick_pivot(A, c, r)
        if p is None:
            continue
        if p != r:
            A[r], A[p] = A[p], A[r]
            swaps += 1
        piv = A[r][c]
        for i in range(r + 1, nrows):
            a_ic = A[i][c]
            row_i = A[i]
            row_r = A[r]
            for j in range(c + 1, ncols):
                q, rem = divmod(piv * row_i[j] - a_ic * row_r[j], prev)
                assert rem == 0, "Bareiss division was not exact"
                row_i[j] = q
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, swaps


def det(rows: Sequence[Sequence]) -> Fraction:
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    A, scale = _integer_rows(rows)
    pivots, swaps = _bareiss(A)
    if len(pivots) < n:
        return Fraction(0)
    value = A[n - 1][n - 1]
    return Fraction((-1) ** swaps * value) / scale


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    A, _ = _integer_rows(rows)
    pivots, _ = _bareiss(A)
    return len(pivots)


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : A v = 0}, one integer-primitive vector per free column."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty system")
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    A, _ = _integer_rows(rows)
    pivots, _ = _bareiss(A)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i in reversed(range(len(pivots))):
            p = pivots[i]
            s = sum((A[i][j] * v[j] for j in range(p + 1, ncols) if v[j]), Fraction(0))
            v[p] = -s / A[i][p]
        d = reduce(math.lcm, (x.denominator for x in v), 1)
        ints = [int(x * d) for x in v]
        g = reduce(math.gcd, ints, 0) or 1
        basis.append([Fraction(x, g) for x in ints])
    return basis


def mat_vec(rows: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in rows]
