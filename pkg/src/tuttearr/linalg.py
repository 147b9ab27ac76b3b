"""Exact linear algebra over the integers and rationals.

Nothing in here touches floating point. Rank uses Bareiss fraction-free
elimination so intermediate entries stay integral.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        g = gcd(g, v)
    if g > 1:
        row = [v // g for v in row]
    return row


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix, by fraction-free elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    nrows = len(m)
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, nrows):
            a = m[i][col]
            row_i = m[i]
            row_p = m[rank]
            for j in range(col + 1, ncols):
                # exact by Sylvester's identity
                row_i[j] = (p * row_i[j] - a * row_p[j]) // prev
            row_i[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        p = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (p * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = p
    return sign * m[n - 1][n - 1]


class Echelon:
    """Integer row-echelon basis of an augmented system ``normal . x = offset``.

    Rows are stored as ``(pivot, row)`` with ``row = (*normal, offset)`` kept
    primitive. Instances are treated as immutable: :meth:`add` returns a new
    basis, which makes depth-first subset enumeration cheap.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: tuple = ()):
        self.rows = rows

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: Sequence[int]) -> list[int]:
        r = list(row)
        for piv, b in self.rows:
            a = r[piv]
            if a:
                p = b[piv]
                r = [p * x - a * y for x, y in zip(r, b)]
                r = _primitive(r)
        return r

    def add(self, row: Sequence[int]) -> tuple[str, "Echelon"]:
        """Return ``(status, basis)`` with status ``new``, ``dependent`` or ``inconsistent``."""
        r = self.reduce(row)
        for j in range(len(r) - 1):
            if r[j]:
                if r[j] < 0:
                    r = [-v for v in r]
                return "new", Echelon(self.rows + ((j, tuple(r)),))
        if r[-1]:
            return "inconsistent", self
        return "dependent", self


def rref(rows: Sequence[Sequence[int]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(v) for v in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    lead = 0
    for col in range(ncols):
        piv = None
        for i in range(lead, len(m)):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[lead], m[piv] = m[piv], m[lead]
        inv = 1 / m[lead][col]
        m[lead] = [v * inv for v in m[lead]]
        for i in range(len(m)):
            if i != lead and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[lead])]
        pivots.append(col)
        lead += 1
        if lead == len(m):
            break
    return m[:lead], pivots


def clear_denominators(row: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for v in row:
        den = den * v.denominator // gcd(den, v.denominator)
    return tuple(_primitive([int(v * den) for v in row]))


def kernel_basis(rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Basis of the right null space of ``rows``.

    Returns ``(basis, free)`` where ``basis[i]`` restricted to the columns
    ``free`` is the i-th unit vector.
    """
    red, piv = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    vecs = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red, piv):
            v[p] = -r[f]
        vecs.append(v)
    return vecs, free
