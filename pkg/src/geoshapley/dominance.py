"""Static dominance counting for arbitrary query points.

A mergesort tree over y values in x order: each level stores sorted y
segments, so a quadrant count decomposes the x range into O(log n)
canonical nodes and binary-searches each one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry


@dataclass(frozen=True)
class DominanceCounts:
    """Sizes of the closed NE / NW / SE point quadrants at a query point."""

    ne: int
    nw: int
    se: int


class DominanceIndex:
    """Preprocesses a point set for O(polylog n) quadrant counting."""

    def __init__(self, points):
        pts = geometry.as_points(points)
        order = np.argsort(pts[:, 0], kind="stable")
        self.xs = pts[order, 0]
        ys = pts[order, 1]
        self.n = pts.shape[0]
        # levels[k]: y values sorted within blocks of size 2^k
        self.levels = [ys.copy()]
        size = 1
        while size < self.n:
            size *= 2
            prev = self.levels[-1]
            merged = prev.copy()
            for start in range(0, self.n, size):
                mid = min(start + size, self.n)
                merged[start:mid] = np.sort(prev[start:mid], kind="stable")
            self.levels.append(merged)

    def _count_y_ge(self, lo, hi, qy):
        """Count points with index in [lo, hi) and y >= qy."""
        total = 0
        k = len(self.levels) - 1
        # Decompose [lo, hi) into maximal aligned blocks, largest first.
        spans = [(lo, hi, k)]
        while spans:
            a, b, lev = spans.pop()
            if a >= b:
                continue
            size = 1 << lev
            if a % size == 0 and a + size <= b:
                arr = self.levels[lev][a : a + size]
                total += size - np.searchsorted(arr, qy, side="left")
                spans.append((a + size, b, lev))
            elif lev == 0:
                arr = self.levels[0][a:b]
                total += int(np.sum(arr >= qy))
            else:
                spans.append((a, b, lev - 1))
        return int(total)

    def _count_y_le(self, lo, hi, qy):
        spans = [(lo, hi, len(self.levels) - 1)]
        total = 0
        while spans:
            a, b, lev = spans.pop()
            if a >= b:
                continue
            size = 1 << lev
            if a % size == 0 and a + size <= b:
                arr = self.levels[lev][a : a + size]
                total += np.searchsorted(arr, qy, side="right")
                spans.append((a + size, b, lev))
            elif lev == 0:
                arr = self.levels[0][a:b]
                total += int(np.sum(arr <= qy))
            else:
                spans.append((a, b, lev - 1))
        return int(total)

    def ne(self, q):
        lo = int(np.searchsorted(self.xs, q[0], side="left"))
        return self._count_y_ge(lo, self.n, q[1])

    def nw(self, q):
        hi = int(np.searchsorted(self.xs, q[0], side="right"))
        return self._count_y_ge(0, hi, q[1])

    def se(self, q):
        lo = int(np.searchsorted(self.xs, q[0], side="left"))
        return self._count_y_le(lo, self.n, q[1])

    def counts(self, q):
        return DominanceCounts(self.ne(q), self.nw(q), self.se(q))


def build_dominance_index(points):
    """O(n log n) preprocessing; ne/nw/se of any query point afterwards."""
    return DominanceIndex(points)
