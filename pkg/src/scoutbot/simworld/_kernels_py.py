"""Pure-Python ray casting and grid tracing kernels.

Fallback twin of the compiled module ``_kernels``. Both implementations
use the same formulas and evaluation order so that results are
bit-identical; keep them in sync.
"""

import math

BACKEND = "python"

_INF = math.inf
_EPS_DIR = 1e-300  # below this a direction component is treated as zero

UNKNOWN = 0
FREE = 1
OCCUPIED = 2

HIT_BOUNDS = -1
HIT_CLIPPED = -2


def cast_rays(px, py, angles, rects, bounds, max_range, out_ranges, out_hits):
    """Cast |angles| rays from (px, py) against axis-aligned rects.

    rects is an (M, 4) float array of (x0, y0, x1, y1); bounds a 4-tuple of
    the same layout. Writes per-ray range into out_ranges and the index of
    the rect hit into out_hits (-1 for the world bound, -2 when clipped to
    max_range).
    """
    bx0, by0, bx1, by1 = bounds
    n = len(angles)
    m = len(rects)
    for k in range(n):
        a = angles[k]
        dx = math.cos(a)
        dy = math.sin(a)

        # exit distance through the world bounds (origin is inside them)
        if dx > _EPS_DIR:
            tbx = (bx1 - px) / dx
        elif dx < -_EPS_DIR:
            tbx = (bx0 - px) / dx
        else:
            tbx = _INF
        if dy > _EPS_DIR:
            tby = (by1 - py) / dy
        elif dy < -_EPS_DIR:
            tby = (by0 - py) / dy
        else:
            tby = _INF
        best = tbx if tbx < tby else tby
        hit = HIT_BOUNDS

        for i in range(m):
            x0 = rects[i][0]
            y0 = rects[i][1]
            x1 = rects[i][2]
            y1 = rects[i][3]
            if dx > _EPS_DIR or dx < -_EPS_DIR:
                inv = 1.0 / dx
                t1 = (x0 - px) * inv
                t2 = (x1 - px) * inv
                if t1 < t2:
                    txmin, txmax = t1, t2
                else:
                    txmin, txmax = t2, t1
            else:
                if px < x0 or px > x1:
                    continue
                txmin, txmax = -_INF, _INF
            if dy > _EPS_DIR or dy < -_EPS_DIR:
                inv = 1.0 / dy
                t1 = (y0 - py) * inv
                t2 = (y1 - py) * inv
                if t1 < t2:
                    tymin, tymax = t1, t2
                else:
                    tymin, tymax = t2, t1
            else:
                if py < y0 or py > y1:
                    continue
                tymin, tymax = -_INF, _INF
            tmin = txmin if txmin > tymin else tymin
            tmax = txmax if txmax < tymax else tymax
            if tmax < tmin or tmax < 0.0:
                continue
            if tmin > 1e-12 and tmin < best:
                best = tmin
                hit = i

        if best > max_range:
            best = max_range
            hit = HIT_CLIPPED
        out_ranges[k] = best
        out_hits[k] = hit


def trace_rays_into_grid(cells, px, py, angles, ranges, hits, res, ox, oy):
    """Mark grid cells along each ray: free before the hit, occupied at it.

    cells is an int8 (nx, ny) array indexed [ix, iy]. Free never overwrites
    occupied; clipped rays (hits[k] == -2) mark no occupied cell.
    """
    nx = cells.shape[0]
    ny = cells.shape[1]
    n = len(angles)
    nudge = res * 1e-3
    for k in range(n):
        a = angles[k]
        r = ranges[k]
        dx = math.cos(a)
        dy = math.sin(a)

        ix = int(math.floor((px - ox) / res))
        iy = int(math.floor((py - oy) / res))
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
            tmax_x = _INF
            tdelta_x = _INF
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
            tmax_y = _INF
            tdelta_y = _INF

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

        if hits[k] == HIT_CLIPPED:
            continue
        hx = px + (r + nudge) * dx
        hy = py + (r + nudge) * dy
        hix = int(math.floor((hx - ox) / res))
        hiy = int(math.floor((hy - oy) / res))
        if hix < 0:
            hix = 0
        elif hix >= nx:
            hix = nx - 1
        if hiy < 0:
            hiy = 0
        elif hiy >= ny:
            hiy = ny - 1
        cells[hix, hiy] = OCCUPIED
