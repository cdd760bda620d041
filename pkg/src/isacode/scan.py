"""Substring identity in O(1) after O(N^2) preprocessing, plus periodicity.

Positions in this module are 1-based, matching the vertex numbering used for
A- and S-graphs: ``eq(i, j, k)`` compares the length-``k`` blocks starting at
positions ``i`` and ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence


class PreconditionError(ValueError):
    pass


class IdentityTable:
    """Equivalence-class numbering of all substrings of an element string.

    ``block_id(i, k)`` is an integer that is equal for two blocks iff the
    blocks are equal element by element.  Built by extending classes one
    element at a time: the class of a length-``k`` block is determined by the
    class of its length-``k-1`` prefix and its last element.
    """

    def __init__(self, elements: Sequence, key: Callable[[object], Hashable] | None = None):
        self.elements = tuple(elements)
        n = len(self.elements)
        self.n = n
        keyed = [key(e) if key else e for e in self.elements]
        numbering: dict = {}
        # ids[k][i]: class of the block of length k starting at 0-based i
        ids: list[list[int]] = [[0] * (n + 1)]
        for k in range(1, n + 1):
            prev = ids[k - 1]
            row = []
            for i in range(n - k + 1):
                row.append(numbering.setdefault((prev[i], keyed[i + k - 1]), len(numbering) + 1))
            ids.append(row)
        self._ids = ids

    def block_id(self, i: int, k: int) -> int:
        """Class of the block of length ``k`` at 1-based position ``i``."""
        if k == 0:
            return 0
        return self._ids[k][i - 1]

    def span_id(self, start: int, stop: int) -> int:
        """Class of the 0-based half-open span ``[start, stop)``."""
        if stop == start:
            return 0
        return self._ids[stop - start][start]

    def eq(self, i: int, j: int, k: int) -> bool:
        if k == 0:
            return True
        if i < 1 or j < 1 or i + k - 1 > self.n or j + k - 1 > self.n:
            raise IndexError("block outside the string")
        return self._ids[k][i - 1] == self._ids[k][j - 1]


def build_identity_table(s: Sequence, key=None) -> IdentityTable:
    return IdentityTable(s, key)


def iform_decompositions(s: Sequence, i: int, j: int, table: IdentityTable | None = None):
    """All ``(period, factor)`` with factor >= 2 that tile ``s[i..j-1]``.

    ``i`` and ``j`` are 1-based with ``i < j <= len(s) + 1``.  Ordered by
    increasing period.
    """
    if table is None:
        table = IdentityTable(s)
    length = j - i
    out = []
    for p in range(1, length // 2 + 1):
        if length % p:
            continue
        # a block repeats iff the span equals itself shifted by one period
        if table.eq(i, i + p, length - p):
            out.append((p, length // p))
    return out


@dataclass(frozen=True)
class OverlapSplit:
    """Result of writing ``c2 = c1 X = Y c1``.

    When the overlap is an integral number of periods ``x == y``; otherwise
    ``y == v + w`` and ``x == w + v``.
    """

    x: tuple
    y: tuple
    v: tuple | None = None
    w: tuple | None = None


def overlap_decompose(c1: Sequence, c2: Sequence) -> OverlapSplit:
    c1, c2 = tuple(c1), tuple(c2)
    k, p = len(c1), len(c2)
    if not (0 < k < p) or c2[:k] != c1 or c2[p - k:] != c1:
        raise PreconditionError("c1 must be a proper border of c2")
    x = c2[k:]
    y = c2[:p - k]
    if p % (p - k) == 0:
        return OverlapSplit(x, y)
    r = p - (p // (p - k)) * (p - k)
    v, w = c2[:r], c2[r:p - k]
    return OverlapSplit(x, y, v, w)
