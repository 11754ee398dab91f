# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled pair kernels.

Hot inner loop of candidate-graph construction: classify candidate index
pairs by the mutual zone-membership tests.  Keep the arithmetic identical
(same operations, same order) to kernels/pure.py; the test suite asserts
bitwise-equal results between the two backends.
"""

import numpy as np

from libc.math cimport asin, fabs, sin, sqrt

BACKEND_NAME = "compiled"


def pair_codes_noise_free(double[::1] px, double[::1] py,
                          double[::1] tx, double[::1] ty,
                          long long[::1] ii, long long[::1] jj,
                          double kappa, double eps, double tol):
    cdef Py_ssize_t n = ii.shape[0]
    out_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef Py_ssize_t k, a, b
    cdef double dx, dy, r2, bar, wa, wb
    cdef double lim = eps + tol
    cdef double lim2 = lim * lim
    cdef double tol2 = tol * tol
    cdef double half_k = 0.5 * kappa
    for k in range(n):
        a = ii[k]
        b = jj[k]
        dx = px[b] - px[a]
        dy = py[b] - py[a]
        r2 = dx * dx + dy * dy
        if r2 < tol2:
            out[k] = 2
            continue
        if r2 > lim2:
            continue
        bar = half_k * r2 + tol
        wa = fabs(dx * ty[a] - dy * tx[a])
        if wa > bar:
            continue
        wb = fabs(dx * ty[b] - dy * tx[b])
        if wb <= bar:
            out[k] = 1
    return out_arr


def pair_codes_noisy(double[::1] px, double[::1] py,
                     double[::1] tx, double[::1] ty,
                     long long[::1] ii, long long[::1] jj,
                     double kappa, double eps, double xi,
                     double slack, double tol):
    cdef Py_ssize_t n = ii.shape[0]
    out_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef Py_ssize_t k, a, b, v, wsel
    cdef double dx, dy, r2, r, reach, rhs, w, s, ang, lhs
    cdef bint ok
    cdef double lim = eps + slack + tol
    cdef double lim2 = lim * lim
    cdef double tol2 = tol * tol
    cdef double half_k = 0.5 * kappa
    for k in range(n):
        a = ii[k]
        b = jj[k]
        dx = px[b] - px[a]
        dy = py[b] - py[a]
        r2 = dx * dx + dy * dy
        if r2 < tol2:
            out[k] = 2
            continue
        if r2 > lim2:
            continue
        r = sqrt(r2)
        reach = r + slack
        if reach > eps:
            reach = eps
        rhs = half_k * reach * reach + tol
        ok = True
        for wsel in range(2):
            v = a if wsel == 0 else b
            w = fabs(dx * ty[v] - dy * tx[v])
            if xi > 0.0 and r > 0.0:
                s = w / r
                if s > 1.0:
                    s = 1.0
                ang = asin(s) - xi
                if ang < 0.0:
                    ang = 0.0
                lhs = r * sin(ang)
            else:
                lhs = w
            lhs -= slack
            if lhs < 0.0:
                lhs = 0.0
            if lhs > rhs:
                ok = False
                break
        if ok:
            out[k] = 1
    return out_arr
