"""Exact linear algebra over Q.

Rank uses fraction-free (Bareiss) elimination on integer rows obtained by
clearing denominators; pivots are chosen as the first nonzero entry in
column order so results are reproducible.  Solving uses elimination over
``Fraction``.

Matrices are lists of rows.  Sparse callers build them with
:func:`dense_from_columns`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence

Matrix = List[List[Fraction]]


def _integer_rows(rows: Sequence[Sequence]) -> List[List[int]]:
    out = []
    for row in rows:
        den = 1
        for v in row:
            v = Fraction(v)
            if v.denominator != 1:
                den = lcm(den, v.denominator)
        ints = [int(Fraction(v) * den) for v in row]
        if any(ints):
            g = 0
            for v in ints:
                g = gcd(g, v)
            out.append([v // g for v in ints])
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by Bareiss fraction-free elimination."""
    m = _integer_rows(rows)
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            a = m[i][c]
            row_i, row_r = m[i], m[r]
            # exact division by the previous pivot (Sylvester identity)
            m[i] = [(p * row_i[j] - a * row_r[j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == len(m):
            break
    return r


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[List[Fraction]]:
    """One solution ``x`` of ``A x = b``, or ``None`` when inconsistent.

    Free variables are set to zero, so the returned solution is deterministic.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    if len(rhs) != nrows:
        raise ValueError("right-hand side length does not match the row count")
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    return x


def dense_from_columns(columns: Sequence[Dict[int, Fraction]], nrows: int) -> Matrix:
    """Dense row-major matrix from sparse columns ``{row: value}``."""
    m = [[Fraction(0)] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, v in col.items():
            m[i][j] = Fraction(v)
    return m


def transpose(rows: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*rows)] if rows else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if not a or not b:
        return [[Fraction(0)] * (len(b[0]) if b else 0) for _ in range(len(a))]
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def is_zero_matrix(rows: Sequence[Sequence]) -> bool:
    return all(not v for row in rows for v in row)
