"""Pure-Python path-evaluation kernels, used when the extension is unavailable.

Cell ``(col, row)`` is the closed square ``[col, col+1] x [row, row+1]`` in
cell units. A segment is swept column by column: inside each column strip it
spans a y-interval, and every row whose closed interval meets it is touched.
That enumerates exactly the closed cells the segment meets, corner grazes and
boundary-running segments included, each at most once. Interpolated y values
within rounding distance of a lattice line are recomputed with rationals, so
near-corner passes are decided by the exact geometry of the input doubles.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

# Interpolated y values this close to a lattice line are decided exactly.
NEAR_LATTICE = 1e-9


def exact_rows(x0, y0, x1, y1, x):
    """``(ceil(y) - 1, floor(y))`` for the exact y of the line at ``x``."""
    y = Fraction(y0) + (Fraction(x) - Fraction(x0)) * (Fraction(y1) - Fraction(y0)) / (
        Fraction(x1) - Fraction(x0)
    )
    return math.ceil(y) - 1, math.floor(y)


def _rows(x0, y0, x1, y1, slope, x):
    y = y0 + (x - x0) * slope
    if abs(y - round(y)) <= NEAR_LATTICE * max(1.0, abs(y)):
        return exact_rows(x0, y0, x1, y1, x)
    return math.ceil(y) - 1, math.floor(y)


def segment_hits(x0, y0, x1, y1, occ) -> int:
    """Number of distinct obstacle cells touched by one segment (cell units)."""
    height, width = occ.shape
    if x0 > x1:
        x0, y0, x1, y1 = x1, y1, x0, y0
    c_lo = max(math.ceil(x0) - 1, 0)
    c_hi = min(math.floor(x1), width - 1)
    slope = (y1 - y0) / (x1 - x0) if x1 != x0 else 0.0
    hits = 0
    for c in range(c_lo, c_hi + 1):
        if x1 == x0:
            lo_a, hi_a = math.ceil(y0) - 1, math.floor(y0)
            lo_b, hi_b = math.ceil(y1) - 1, math.floor(y1)
        else:
            if x0 > c:
                lo_a, hi_a = math.ceil(y0) - 1, math.floor(y0)
            else:
                lo_a, hi_a = _rows(x0, y0, x1, y1, slope, float(c))
            if x1 < c + 1:
                lo_b, hi_b = math.ceil(y1) - 1, math.floor(y1)
            else:
                lo_b, hi_b = _rows(x0, y0, x1, y1, slope, float(c + 1))
        r_lo = max(min(lo_a, lo_b), 0)
        r_hi = min(max(hi_a, hi_b), height - 1)
        for r in range(r_lo, r_hi + 1):
            if occ[r][c]:
                hits += 1
    return hits


def evaluate_paths(interior, start, goal, occ, cell_size):
    """Lengths and collision counts for a batch of decision vectors.

    ``interior`` has shape ``(n, 2k)``; each row lists ``k`` interior waypoints
    as ``x1, y1, x2, y2, ...`` in metres.
    """
    interior = np.asarray(interior, dtype=float)
    grid = grid_view(np.asarray(occ, dtype=np.uint8).tolist())
    n, k2 = interior.shape
    inv = 1.0 / cell_size
    lengths = np.empty(n)
    hits = np.empty(n, dtype=np.int64)
    sx, sy = float(start[0]), float(start[1])
    gx, gy = float(goal[0]), float(goal[1])
    for i, row in enumerate(interior.tolist()):
        xs = [sx] + row[0::2] + [gx]
        ys = [sy] + row[1::2] + [gy]
        total = 0.0
        count = 0
        for j in range(len(xs) - 1):
            dx = xs[j + 1] - xs[j]
            dy = ys[j + 1] - ys[j]
            total += math.sqrt(dx * dx + dy * dy)
            count += segment_hits(
                xs[j] * inv, ys[j] * inv, xs[j + 1] * inv, ys[j + 1] * inv, grid
            )
        lengths[i] = total
        hits[i] = count
    return lengths, hits


class grid_view:
    """List-of-lists wrapper exposing ``.shape`` and ``[r][c]`` indexing."""

    __slots__ = ("rows", "shape")

    def __init__(self, rows):
        self.rows = rows
        self.shape = (len(rows), len(rows[0]) if rows else 0)

    def __getitem__(self, r):
        return self.rows[r]
