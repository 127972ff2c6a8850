# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled ray casting and grid tracing kernels.

Twin of ``_kernels_py``; same formulas and evaluation order so results
are bit-identical. Keep both in sync.
"""

from libc.math cimport cos, sin, floor, INFINITY

import numpy as np

BACKEND = "cython"

cdef double _EPS_DIR = 1e-300

cdef signed char UNKNOWN = 0
cdef signed char FREE = 1
cdef signed char OCCUPIED = 2

HIT_BOUNDS = -1
HIT_CLIPPED = -2


def cast_rays(double px, double py, double[::1] angles, double[:, ::1] rects,
              bounds, double max_range,
              double[::1] out_ranges, int[::1] out_hits):
    """See _kernels_py.cast_rays."""
    cdef double bx0 = bounds[0]
    cdef double by0 = bounds[1]
    cdef double bx1 = bounds[2]
    cdef double by1 = bounds[3]
    cdef Py_ssize_t n = angles.shape[0]
    cdef Py_ssize_t m = rects.shape[0]
    cdef Py_ssize_t k, i
    cdef double a, dx, dy, tbx, tby, best
    cdef double x0, y0, x1, y1, inv, t1, t2
    cdef double txmin, txmax, tymin, tymax, tmin, tmax
    cdef int hit

    for k in range(n):
        a = angles[k]
        dx = cos(a)
        dy = sin(a)

        if dx > _EPS_DIR:
            tbx = (bx1 - px) / dx
        elif dx < -_EPS_DIR:
            tbx = (bx0 - px) / dx
        else:
            tbx = INFINITY
        if dy > _EPS_DIR:
            tby = (by1 - py) / dy
        elif dy < -_EPS_DIR:
            tby = (by0 - py) / dy
        else:
            tby = INFINITY
        best = tbx if tbx < tby else tby
        hit = -1

        for i in range(m):
            x0 = rects[i, 0]
            y0 = rects[i, 1]
            x1 = rects[i, 2]
            y1 = rects[i, 3]
            if dx > _EPS_DIR or dx < -_EPS_DIR:
                inv = 1.0 / dx
                t1 = (x0 - px) * inv
                t2 = (x1 - px) * inv
                if t1 < t2:
                    txmin = t1
                    txmax = t2
                else:
                    txmin = t2
                    txmax = t1
            else:
                if px < x0 or px > x1:
                    continue
                txmin = -INFINITY
                txmax = INFINITY
            if dy > _EPS_DIR or dy < -_EPS_DIR:
                inv = 1.0 / dy
                t1 = (y0 - py) * inv
                t2 = (y1 - py) * inv
                if t1 < t2:
                    tymin = t1
                    tymax = t2
                else:
                    tymin = t2
                    tymax = t1
            else:
                if py < y0 or py > y1:
                    continue
                tymin = -INFINITY
                tymax = INFINITY
            tmin = txmin if txmin > tymin else tymin
            tmax = txmax if txmax < tymax else tymax
            if tmax < tmin or tmax < 0.0:
                continue
            if tmin > 1e-12 and tmin < best:
                best = tmin
                hit = <int>i

        if best > max_range:
            best = max_range
            hit = -2
        out_ranges[k] = best
        out_hits[k] = hit


def trace_rays_into_grid(signed char[:, ::1] cells, double px, double py,
                         double[::1] angles, double[::1] ranges, int[::1] hits,
                         double res, double ox, double oy):
    """See _kernels_py.trace_rays_into_grid."""
    cdef Py_ssize_t nx = cells.shape[0]
    cdef Py_ssize_t ny = cells.shape[1]
    cdef Py_ssize_t n = angles.shape[0]
    cdef double nudge = res * 1e-3
    cdef Py_ssize_t k
    cdef double a, r, dx, dy, t
    cdef double tmax_x, tmax_y, tdelta_x, tdelta_y, hx, hy
    cdef Py_ssize_t ix, iy, hix, hiy
    cdef int step_x, step_y

    for k in range(n):
        a = angles[k]
        r = ranges[k]
        dx = cos(a)
        dy = sin(a)

        ix = <Py_ssize_t>floor((px - ox) / res)
        iy = <Py_ssize_t>floor((py - oy) / res)
        if ix < 0:
            ix = 0
        elif ix >= nx:
            ix = nx - 1
        if iy < 0:
            iy = 0
        elif iy >= ny:
            iy = ny - 1

        if dx > _EPS_DIR:
            step_x = 1
            tmax_x = (ox + (ix + 1) * res - px) / dx
            tdelta_x = res / dx
        elif dx < -_EPS_DIR:
            step_x = -1
            tmax_x = (ox + ix * res - px) / dx
            tdelta_x = -res / dx
        else:
            step_x = 0
            tmax_x = INFINITY
            tdelta_x = INFINITY
        if dy > _EPS_DIR:
            step_y = 1
            tmax_y = (oy + (iy + 1) * res - py) / dy
            tdelta_y = res / dy
        elif dy < -_EPS_DIR:
            step_y = -1
            tmax_y = (oy + iy * res - py) / dy
            tdelta_y = -res / dy
        else:
            step_y = 0
            tmax_y = INFINITY
            tdelta_y = INFINITY

        t = 0.0
        while t < r:
            if cells[ix, iy] == UNKNOWN:
                cells[ix, iy] = FREE
            if tmax_x < tmax_y:
                t = tmax_x
                tmax_x += tdelta_x
                ix += step_x
            else:
                t = tmax_y
                tmax_y += tdelta_y
                iy += step_y
            if ix < 0 or ix >= nx or iy < 0 or iy >= ny:
                break

        if hits[k] == -2:
            continue
        hx = px + (r + nudge) * dx
        hy = py + (r + nudge) * dy
        hix = <Py_ssize_t>floor((hx - ox) / res)
        hiy = <Py_ssize_t>floor((hy - oy) / res)
        if hix < 0:
            hix = 0
        elif hix >= nx:
            hix = nx - 1
        if hiy < 0:
            hiy = 0
        elif hiy >= ny:
            hiy = ny - 1
        cells[hix, hiy] = OCCUPIED
