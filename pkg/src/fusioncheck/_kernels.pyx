# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled sum-of-products residual kernel.

Every coherence equation used by the package (pentagon, both hexagons) has the
shape ``x[i]*x[j]*x[k] - sum_t x[p_t]*x[q_t]*x[r_t]`` over one flat value array.
"""
import numpy as np


def sum_product_deviations(const double complex[::1] values,
                           const Py_ssize_t[:, ::1] lhs,
                           const Py_ssize_t[::1] rhs_ptr,
                           const Py_ssize_t[:, ::1] rhs):
    cdef Py_ssize_t m = lhs.shape[0]
    cdef Py_ssize_t i, t
    cdef double complex acc
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] o = out
    for i in range(m):
        acc = values[lhs[i, 0]] * values[lhs[i, 1]] * values[lhs[i, 2]]
        for t in range(rhs_ptr[i], rhs_ptr[i + 1]):
            acc -= values[rhs[t, 0]] * values[rhs[t, 1]] * values[rhs[t, 2]]
        o[i] = acc
    return out


def max_abs_deviation(const double complex[::1] values,
                      const Py_ssize_t[:, ::1] lhs,
                      const Py_ssize_t[::1] rhs_ptr,
                      const Py_ssize_t[:, ::1] rhs):
    cdef Py_ssize_t m = lhs.shape[0]
    cdef Py_ssize_t i, t
    cdef double complex acc
    cdef double worst = 0.0, mag
    for i in range(m):
        acc = values[lhs[i, 0]] * values[lhs[i, 1]] * values[lhs[i, 2]]
        for t in range(rhs_ptr[i], rhs_ptr[i + 1]):
            acc -= values[rhs[t, 0]] * values[rhs[t, 1]] * values[rhs[t, 2]]
        mag = abs(acc)
        if mag > worst or mag != mag:
            worst = mag
    return worst
