# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled path-evaluation kernels. Semantics mirror ``_pykernels``, which also
supplies the exact rational fallback for near-lattice cases."""

import numpy as np
cimport numpy as cnp
from libc.math cimport ceil, fabs, floor, fmax, round, sqrt

from greywolf._pykernels import NEAR_LATTICE, exact_rows

cnp.import_array()

cdef double _near = NEAR_LATTICE


cdef void _exact(double x0, double y0, double x1, double y1, double x,
                 long* lo, long* hi) noexcept with gil:
    a, b = exact_rows(x0, y0, x1, y1, x)
    lo[0] = a
    hi[0] = b


cdef inline void _rows(double x0, double y0, double x1, double y1, double slope, double x,
                       long* lo, long* hi) noexcept nogil:
    cdef double y = y0 + (x - x0) * slope
    if fabs(y - round(y)) <= _near * fmax(1.0, fabs(y)):
        # rare: the line passes within rounding distance of a lattice line
        _exact(x0, y0, x1, y1, x, lo, hi)
    else:
        lo[0] = <long>ceil(y) - 1
        hi[0] = <long>floor(y)


cdef inline long _count(double x0, double y0, double x1, double y1,
                        const unsigned char[:, ::1] occ) noexcept nogil:
    cdef Py_ssize_t height = occ.shape[0]
    cdef Py_ssize_t width = occ.shape[1]
    cdef double t, slope
    cdef long c, c_lo, c_hi, r, r_lo, r_hi, lo_a, hi_a, lo_b, hi_b, hits = 0
    if x0 > x1:
        t = x0; x0 = x1; x1 = t
        t = y0; y0 = y1; y1 = t
    c_lo = <long>ceil(x0) - 1
    if c_lo < 0:
        c_lo = 0
    c_hi = <long>floor(x1)
    if c_hi > width - 1:
        c_hi = width - 1
    slope = 0.0
    if x1 != x0:
        slope = (y1 - y0) / (x1 - x0)
    for c in range(c_lo, c_hi + 1):
        if x1 == x0 or x0 > c:
            lo_a = <long>ceil(y0) - 1
            hi_a = <long>floor(y0)
        else:
            _rows(x0, y0, x1, y1, slope, <double>c, &lo_a, &hi_a)
        if x1 == x0 or x1 < c + 1:
            lo_b = <long>ceil(y1) - 1
            hi_b = <long>floor(y1)
        else:
            _rows(x0, y0, x1, y1, slope, <double>(c + 1), &lo_b, &hi_b)
        r_lo = lo_a if lo_a < lo_b else lo_b
        if r_lo < 0:
            r_lo = 0
        r_hi = hi_a if hi_a > hi_b else hi_b
        if r_hi > height - 1:
            r_hi = height - 1
        for r in range(r_lo, r_hi + 1):
            if occ[r, c]:
                hits += 1
    return hits


def segment_hits(double x0, double y0, double x1, double y1, occ):
    cdef const unsigned char[:, ::1] grid = np.ascontiguousarray(occ, dtype=np.uint8)
    return _count(x0, y0, x1, y1, grid)


def evaluate_paths(interior, start, goal, occ, double cell_size):
    cdef const double[:, ::1] P = np.ascontiguousarray(interior, dtype=np.float64)
    cdef const unsigned char[:, ::1] grid = np.ascontiguousarray(occ, dtype=np.uint8)
    cdef Py_ssize_t n = P.shape[0]
    cdef Py_ssize_t k = P.shape[1] // 2
    cdef double sx = start[0], sy = start[1], gx = goal[0], gy = goal[1]
    cdef double inv = 1.0 / cell_size
    lengths_arr = np.empty(n, dtype=np.float64)
    hits_arr = np.empty(n, dtype=np.int64)
    cdef double[::1] lengths = lengths_arr
    cdef long long[::1] hits = hits_arr
    cdef Py_ssize_t i, j
    cdef double px, py, qx, qy, total, dx, dy
    cdef long count
    with nogil:
        for i in range(n):
            px = sx
            py = sy
            total = 0.0
            count = 0
            for j in range(k + 1):
                if j < k:
                    qx = P[i, 2 * j]
                    qy = P[i, 2 * j + 1]
                else:
                    qx = gx
                    qy = gy
                dx = qx - px
                dy = qy - py
                total += sqrt(dx * dx + dy * dy)
                count += _count(px * inv, py * inv, qx * inv, qy * inv, grid)
                px = qx
                py = qy
            lengths[i] = total
            hits[i] = count
    return lengths_arr, hits_arr
