# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled elementwise jet kernels: tanh through an order-3 Taylor jet,
forward and adjoint, fused into single passes over the data.

Same layout as the numpy fallback: jets are (4, N) float64, channel-first.
"""

import numpy as np

from libc.math cimport tanh

BACKEND_NAME = "cython"


def tanh_jet_forward(double[:, ::1] z):
    cdef Py_ssize_t n = z.shape[1]
    cdef Py_ssize_t i
    out_arr = np.empty((4, n), dtype=np.float64)
    t_arr = np.empty(n, dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double[::1] tv = t_arr
    cdef double t, s1, s2, s3, u1, u2, u3
    for i in range(n):
        t = tanh(z[0, i])
        s1 = 1.0 - t * t
        s2 = -2.0 * t * s1
        s3 = -2.0 * s1 * (1.0 - 3.0 * t * t)
        u1 = z[1, i]
        u2 = z[2, i]
        u3 = z[3, i]
        tv[i] = t
        out[0, i] = t
        out[1, i] = s1 * u1
        out[2, i] = s2 * u1 * u1 + s1 * u2
        out[3, i] = s3 * u1 * u1 * u1 + 3.0 * s2 * u1 * u2 + s1 * u3
    return out_arr, t_arr


def tanh_jet_backward(double[::1] t_in, double[:, ::1] z, double[:, ::1] abar):
    cdef Py_ssize_t n = z.shape[1]
    cdef Py_ssize_t i
    zbar_arr = np.empty((4, n), dtype=np.float64)
    cdef double[:, ::1] zbar = zbar_arr
    cdef double t, s1, s2, s3, s4, w, u1, u2, u3, a0, a1, a2, a3
    for i in range(n):
        t = t_in[i]
        s1 = 1.0 - t * t
        s2 = -2.0 * t * s1
        w = 1.0 - 3.0 * t * t
        s3 = -2.0 * s1 * w
        s4 = -2.0 * s2 * w + 12.0 * t * s1 * s1
        u1 = z[1, i]
        u2 = z[2, i]
        u3 = z[3, i]
        a0 = abar[0, i]
        a1 = abar[1, i]
        a2 = abar[2, i]
        a3 = abar[3, i]
        zbar[0, i] = (a0 * s1 + a1 * s2 * u1
                      + a2 * (s3 * u1 * u1 + s2 * u2)
                      + a3 * (s4 * u1 * u1 * u1 + 3.0 * s3 * u1 * u2 + s2 * u3))
        zbar[1, i] = a1 * s1 + 2.0 * a2 * s2 * u1 + a3 * (3.0 * s3 * u1 * u1 + 3.0 * s2 * u2)
        zbar[2, i] = a2 * s1 + 3.0 * a3 * s2 * u1
        zbar[3, i] = a3 * s1
    return zbar_arr
