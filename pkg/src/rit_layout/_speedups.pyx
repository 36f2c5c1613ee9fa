# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for arc-polygonized shoelace areas.

Mirrors the numpy fallback in rit_layout.measure: every arc is walked in
angle steps no larger than ``max_step`` and the running shoelace sum is
accumulated point by point, so no vertex arrays are materialized.
"""

from libc.math cimport ceil, cos, fabs, sin


def loop_signed_area(double[:, :] segs, double max_step):
    """Signed shoelace area of one closed loop.

    Each row of ``segs`` describes a segment: [0, x0, y0, x1, y1, 0] for a
    line, [1, radius, start, end, 0, 0] for an origin-centered arc.
    """
    cdef double acc = 0.0
    cdef double px = 0.0, py = 0.0, fx = 0.0, fy = 0.0
    cdef double x, y, r, a0, a1, span, step
    cdef Py_ssize_t i, j, n
    cdef bint started = False

    for i in range(segs.shape[0]):
        if segs[i, 0] == 0.0:
            if not started:
                px = segs[i, 1]
                py = segs[i, 2]
                fx = px
                fy = py
                started = True
            x = segs[i, 3]
            y = segs[i, 4]
            acc += px * y - x * py
            px = x
            py = y
        else:
            r = segs[i, 1]
            a0 = segs[i, 2]
            a1 = segs[i, 3]
            if not started:
                px = r * cos(a0)
                py = r * sin(a0)
                fx = px
                fy = py
                started = True
            span = a1 - a0
            n = <Py_ssize_t> ceil(fabs(span) / max_step)
            if n < 1:
                n = 1
            step = span / n
            for j in range(1, n + 1):
                x = r * cos(a0 + step * j)
                y = r * sin(a0 + step * j)
                acc += px * y - x * py
                px = x
                py = y

    acc += px * fy - fx * py
    return 0.5 * acc
