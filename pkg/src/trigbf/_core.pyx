# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled hot kernels: box running sums and recursive Gaussian passes.

Mirrors the API of ``_fallback``.  ``box_pass`` filters along the last axis;
``recursive_smooth`` filters along the first axis so its inner loops stream
whole rows and vectorize across columns.  Loops release the GIL so auxiliary
images can be filtered from worker threads in parallel.
"""

import numpy as np


cdef inline Py_ssize_t _mirror(Py_ssize_t i, Py_ssize_t n) nogil:
    # Whole-sample reflection, identical to numpy's "reflect" padding.
    cdef Py_ssize_t period
    if n == 1:
        return 0
    period = 2 * (n - 1)
    i = i % period
    if i < 0:
        i += period
    if i >= n:
        i = period - i
    return i


def box_pass(double[:, :] a, Py_ssize_t radius):
    """Normalized running-sum box average with mirror boundary.

    The sliding sum is kept in extended precision so downstream ratios stay
    accurate even where the bilateral normalizer is small.
    """
    cdef Py_ssize_t h = a.shape[0]
    cdef Py_ssize_t w = a.shape[1]
    out_arr = np.empty((h, w), dtype=np.float64)
    cdef double[:, :] out = out_arr
    cdef Py_ssize_t i, j, k
    cdef long double acc
    cdef long double inv = 1.0 / <long double> (2 * radius + 1)
    if radius == 0:
        out_arr[:, :] = a
        return out_arr
    with nogil:
        for i in range(h):
            acc = 0.0
            for k in range(-radius, radius + 1):
                acc += a[i, _mirror(k, w)]
            out[i, 0] = <double> (acc * inv)
            for j in range(1, w):
                acc += <long double> a[i, _mirror(j + radius, w)] - <long double> a[i, _mirror(j - radius - 1, w)]
                out[i, j] = <double> (acc * inv)
    return out_arr


def recursive_smooth(double[:, :] a, double scale, double c1, double c2,
                     double c3, double c4, Py_ssize_t pad):
    """Fourth-order forward/backward recursion along axis 0.

    The signal is extended by ``pad`` mirrored rows on each side, realized by
    index mapping rather than copying, with replicate start-up beyond the
    extension.  Rows 0..3 of the scratch buffer hold the forward start-up
    state and rows ext+4..ext+7 the backward one, which keeps both loops
    branch-free.
    """
    cdef Py_ssize_t h = a.shape[0]
    cdef Py_ssize_t w = a.shape[1]
    cdef Py_ssize_t ext = h + 2 * pad
    scratch_arr = np.empty((ext + 8, w), dtype=np.float64)
    out_arr = np.empty((h, w), dtype=np.float64)
    cdef double[:, :] s = scratch_arr
    cdef double[:, :] out = out_arr
    cdef Py_ssize_t r, x, src
    with nogil:
        src = _mirror(-pad, h)
        for r in range(4):
            for x in range(w):
                s[r, x] = a[src, x]
        for r in range(ext):
            src = _mirror(r - pad, h)
            for x in range(w):
                s[r + 4, x] = (scale * a[src, x] + c1 * s[r + 3, x]
                               + c2 * s[r + 2, x] + c3 * s[r + 1, x]
                               + c4 * s[r, x])
        for r in range(ext + 4, ext + 8):
            for x in range(w):
                s[r, x] = s[ext + 3, x]
        for r in range(ext - 1, -1, -1):
            for x in range(w):
                s[r + 4, x] = (scale * s[r + 4, x] + c1 * s[r + 5, x]
                               + c2 * s[r + 6, x] + c3 * s[r + 7, x]
                               + c4 * s[r + 8, x])
        for r in range(h):
            for x in range(w):
                out[r, x] = s[pad + r + 4, x]
    return out_arr
