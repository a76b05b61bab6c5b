"""Tiny exact linear algebra over the rationals (row spaces and ranks).

Everything here works on lists of Fraction rows; sizes are desk scale
(chain complexes of small 2-complexes), so plain Gaussian elimination is
both exact and fast enough.
"""

from __future__ import annotations

from fractions import Fraction

F = Fraction


class RowSpace:
    """Incrementally built row space in reduced echelon form."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def reduce(self, vector) -> list[Fraction]:
        v = [F(x) for x in vector]
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                c = v[p]
                for j in range(self.width):
                    v[j] -= c * row[j]
        return v

    def add(self, vector) -> bool:
        """Insert a vector; returns True when it enlarged the space."""
        v = self.reduce(vector)
        pivot = next((j for j in range(self.width) if v[j] != 0), None)
        if pivot is None:
            return False
        c = v[pivot]
        v = [x / c for x in v]
        for row, p in zip(self.rows, self.pivots):
            if row[pivot] != 0:
                d = row[pivot]
                for j in range(self.width):
                    row[j] -= d * v[j]
        self.rows.append(v)
        self.pivots.append(pivot)
        return True

    def contains(self, vector) -> bool:
        return all(x == 0 for x in self.reduce(vector))

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank_of(rows, width: int) -> int:
    space = RowSpace(width)
    for r in rows:
        space.add(r)
    return space.rank
