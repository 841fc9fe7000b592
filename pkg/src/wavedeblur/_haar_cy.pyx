# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Haar filter-bank kernels.

Same stacked-band layout and, crucially, the same floating-point
evaluation order as ``wavedeblur._haar_np`` so the two backends are
bit-identical. See that module for the coefficient convention.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def analysis_stack(x):
    """One Haar analysis step over a (B, h, w) float64 stack."""
    cdef cnp.ndarray[cnp.float64_t, ndim=3] xin = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t nb = xin.shape[0]
    cdef Py_ssize_t h2 = xin.shape[1] // 2
    cdef Py_ssize_t w2 = xin.shape[2] // 2
    cdef cnp.ndarray[cnp.float64_t, ndim=3] out = np.empty((4 * nb, h2, w2), dtype=np.float64)
    cdef double[:, :, ::1] xv = xin
    cdef double[:, :, ::1] ov = out
    cdef Py_ssize_t b, i, j
    cdef double a, bb, c, d
    for b in range(nb):
        for i in range(h2):
            for j in range(w2):
                a = xv[b, 2 * i, 2 * j]
                bb = xv[b, 2 * i, 2 * j + 1]
                c = xv[b, 2 * i + 1, 2 * j]
                d = xv[b, 2 * i + 1, 2 * j + 1]
                ov[4 * b, i, j] = (((a + bb) + c) + d) * 0.5
                ov[4 * b + 1, i, j] = (((a + bb) - c) - d) * 0.5
                ov[4 * b + 2, i, j] = (((a - bb) + c) - d) * 0.5
                ov[4 * b + 3, i, j] = (((a - bb) - c) + d) * 0.5
    return out


def synthesis_stack(x):
    """Inverse step over a (4*B, h, w) float64 stack."""
    cdef cnp.ndarray[cnp.float64_t, ndim=3] xin = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t nb = xin.shape[0] // 4
    cdef Py_ssize_t h = xin.shape[1]
    cdef Py_ssize_t w = xin.shape[2]
    cdef cnp.ndarray[cnp.float64_t, ndim=3] out = np.empty((nb, 2 * h, 2 * w), dtype=np.float64)
    cdef double[:, :, ::1] xv = xin
    cdef double[:, :, ::1] ov = out
    cdef Py_ssize_t b, i, j
    cdef double ll, lh, hl, hh
    for b in range(nb):
        for i in range(h):
            for j in range(w):
                ll = xv[4 * b, i, j]
                lh = xv[4 * b + 1, i, j]
                hl = xv[4 * b + 2, i, j]
                hh = xv[4 * b + 3, i, j]
                ov[b, 2 * i, 2 * j] = (((ll + lh) + hl) + hh) * 0.5
                ov[b, 2 * i, 2 * j + 1] = (((ll + lh) - hl) - hh) * 0.5
                ov[b, 2 * i + 1, 2 * j] = (((ll - lh) + hl) - hh) * 0.5
                ov[b, 2 * i + 1, 2 * j + 1] = (((ll - lh) - hl) + hh) * 0.5
    return out
