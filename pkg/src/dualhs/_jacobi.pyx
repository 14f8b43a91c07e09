# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled one-sided Jacobi sweeps for complex matrices.

Works on row-stored columns: row ``k`` of ``wt`` is column ``k`` of the
matrix being orthogonalised, row ``k`` of ``vt`` the matching column of the
accumulated right factor.
"""
from libc.math cimport sqrt, hypot

cdef inline double _sqnorm(double complex[:, ::1] a, Py_ssize_t row) noexcept nogil:
    cdef Py_ssize_t k
    cdef double acc = 0.0
    cdef double complex z
    for k in range(a.shape[1]):
        z = a[row, k]
        acc += z.real * z.real + z.imag * z.imag
    return acc


cdef inline void _rotate(double complex[:, ::1] a, Py_ssize_t p, Py_ssize_t q,
                         double c, double s, double complex ph) noexcept nogil:
    # [x_p, x_q] <- [c x_p - s ph x_q, s x_p + c ph x_q]
    cdef Py_ssize_t k
    cdef double complex xp, xq
    for k in range(a.shape[1]):
        xp = a[p, k]
        xq = a[q, k]
        a[p, k] = c * xp - s * ph * xq
        a[q, k] = s * xp + c * ph * xq


def jacobi_sweeps(double complex[:, ::1] wt, double complex[:, ::1] vt,
                  double tol, int max_sweeps):
    """Orthogonalise the rows of ``wt`` in place; returns the sweep count, or -1."""
    cdef Py_ssize_t n = wt.shape[0]
    cdef Py_ssize_t m = wt.shape[1]
    cdef Py_ssize_t p, q, k
    cdef int sweep, rotated
    cdef int result = -1
    cdef double alpha, beta, g, zeta, t, c, s
    cdef double complex gamma, ph
    with nogil:
        for sweep in range(max_sweeps):
            rotated = 0
            for p in range(n - 1):
                for q in range(p + 1, n):
                    alpha = _sqnorm(wt, p)
                    beta = _sqnorm(wt, q)
                    if alpha == 0.0 or beta == 0.0:
                        continue
                    gamma = 0.0
                    for k in range(m):
                        gamma = gamma + wt[p, k].conjugate() * wt[q, k]
                    g = hypot(gamma.real, gamma.imag)
                    if g <= tol * sqrt(alpha) * sqrt(beta):
                        continue
                    rotated = 1
                    ph = gamma.conjugate() / g
                    zeta = (beta - alpha) / (2.0 * g)
                    if zeta >= 0.0:
                        t = 1.0 / (zeta + sqrt(1.0 + zeta * zeta))
                    else:
                        t = -1.0 / (-zeta + sqrt(1.0 + zeta * zeta))
                    c = 1.0 / sqrt(1.0 + t * t)
                    s = c * t
                    _rotate(wt, p, q, c, s, ph)
                    _rotate(vt, p, q, c, s, ph)
            if not rotated:
                result = sweep + 1
                break
    return result
