# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled pair-sum kernels; see _kernels_py for the reference semantics."""

from libc.math cimport sqrt, M_PI

import numpy as np


def gauss_linking_sum(P1, P2):
    cdef double[:, ::1] a = np.ascontiguousarray(P1, dtype=np.float64)
    cdef double[:, ::1] b = np.ascontiguousarray(P2, dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0], m = b.shape[0], i, j, i1, j1
    cdef double d1x, d1y, d1z, m1x, m1y, m1z, d2x, d2y, d2z
    cdef double rx, ry, rz, cx, cy, cz, dist2, total = 0.0
    cdef double[:, ::1] d2 = np.empty((m, 3))
    cdef double[:, ::1] m2 = np.empty((m, 3))
    for j in range(m):
        j1 = j + 1 if j + 1 < m else 0
        d2[j, 0] = b[j1, 0] - b[j, 0]
        d2[j, 1] = b[j1, 1] - b[j, 1]
        d2[j, 2] = b[j1, 2] - b[j, 2]
        m2[j, 0] = b[j, 0] + 0.5 * d2[j, 0]
        m2[j, 1] = b[j, 1] + 0.5 * d2[j, 1]
        m2[j, 2] = b[j, 2] + 0.5 * d2[j, 2]
    with nogil:
        for i in range(n):
            i1 = i + 1 if i + 1 < n else 0
            d1x = a[i1, 0] - a[i, 0]
            d1y = a[i1, 1] - a[i, 1]
            d1z = a[i1, 2] - a[i, 2]
            m1x = a[i, 0] + 0.5 * d1x
            m1y = a[i, 1] + 0.5 * d1y
            m1z = a[i, 2] + 0.5 * d1z
            for j in range(m):
                d2x = d2[j, 0]
                d2y = d2[j, 1]
                d2z = d2[j, 2]
                rx = m1x - m2[j, 0]
                ry = m1y - m2[j, 1]
                rz = m1z - m2[j, 2]
                cx = d1y * d2z - d1z * d2y
                cy = d1z * d2x - d1x * d2z
                cz = d1x * d2y - d1y * d2x
                dist2 = rx * rx + ry * ry + rz * rz
                total += (cx * rx + cy * ry + cz * rz) / (dist2 * sqrt(dist2))
    return total / (4.0 * M_PI)


def helicity_pair_sums(X, W, double cutoff):
    cdef double[:, ::1] x = np.ascontiguousarray(X, dtype=np.float64)
    cdef double[:, ::1] w = np.ascontiguousarray(W, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], i, j
    cdef double c2 = cutoff * cutoff, h2 = 0.25 * cutoff * cutoff
    cdef double rx, ry, rz, d2, val, k
    cdef double wix, wiy, wiz, xix, xiy, xiz
    cdef double s_full = 0.0, s_half = 0.0
    with nogil:
        for i in range(n):
            wix = w[i, 0]
            wiy = w[i, 1]
            wiz = w[i, 2]
            xix = x[i, 0]
            xiy = x[i, 1]
            xiz = x[i, 2]
            for j in range(i + 1, n):
                rx = xix - x[j, 0]
                ry = xiy - x[j, 1]
                rz = xiz - x[j, 2]
                d2 = rx * rx + ry * ry + rz * rz
                if d2 <= h2:
                    continue
                val = ((wiy * w[j, 2] - wiz * w[j, 1]) * rx
                       + (wiz * w[j, 0] - wix * w[j, 2]) * ry
                       + (wix * w[j, 1] - wiy * w[j, 0]) * rz)
                k = val / (d2 * sqrt(d2))
                s_half += k
                if d2 > c2:
                    s_full += k
    return s_full, s_half
