# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels (Cython).

Same API as fockchannel._kernels_py; selected at import by fockchannel._backend.
"""

import numpy as np

from libc.math cimport exp, sqrt, M_PI

BACKEND_NAME = "cython"

cdef double _I0_CROSSOVER = 20.0


cdef double _laguerre1(int n, double x) noexcept nogil:
    cdef double prev = 1.0, cur = 1.0 - x, nxt
    cdef int k
    if n == 0:
        return 1.0
    for k in range(1, n):
        nxt = ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
        prev = cur
        cur = nxt
    return cur


cdef double _legendre1(int n, double x) noexcept nogil:
    cdef double prev = 1.0, cur = x, nxt
    cdef int k
    if n == 0:
        return 1.0
    for k in range(1, n):
        nxt = ((2 * k + 1) * x * cur - k * prev) / (k + 1)
        prev = cur
        cur = nxt
    return cur


cdef double _i0e1(double z) noexcept nogil:
    cdef double term, acc, q
    cdef int k
    if z < _I0_CROSSOVER:
        term = 1.0
        acc = 1.0
        q = 0.25 * z * z
        for k in range(1, 64):
            term = term * q / (<double>k * k)
            acc += term
            if term < 1e-18 * acc:
                break
        return acc * exp(-z)
    term = 1.0
    acc = 1.0
    for k in range(1, 40):
        term = term * (2 * k - 1) * (2 * k - 1) / (8.0 * k * z)
        acc += term
        if term < 1e-18 * acc:
            break
    return acc / sqrt(2.0 * M_PI * z)


def laguerre_values(int n, x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    out_arr = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    for i in range(xv.shape[0]):
        out[i] = _laguerre1(n, xv[i])
    return out_arr


def legendre_values(int n, x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    out_arr = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    for i in range(xv.shape[0]):
        out[i] = _legendre1(n, xv[i])
    return out_arr


def i0_scaled_values(z):
    cdef double[::1] zv = np.ascontiguousarray(z, dtype=np.float64)
    out_arr = np.empty(zv.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    for i in range(zv.shape[0]):
        out[i] = _i0e1(zv[i])
    return out_arr


def squeezed_integrand(u, int n, double lag_scale, double bessel_ratio):
    cdef double[::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    out_arr = np.empty(uv.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double lag
    for i in range(uv.shape[0]):
        lag = _laguerre1(n, lag_scale * uv[i])
        out[i] = exp(-uv[i]) * lag * lag * _i0e1(bessel_ratio * uv[i])
    return out_arr
