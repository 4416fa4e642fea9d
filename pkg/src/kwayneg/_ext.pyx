# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: selective transposition and cyclic Jacobi."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()

def selective_transpose(rho, long swap_mask, selected):
    cdef double complex[:, ::1] src = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef cnp.uint8_t[::1] sel = np.ascontiguousarray(selected, dtype=np.uint8)
    cdef Py_ssize_t dim = src.shape[0]
    out_arr = np.array(src, copy=True)
    cdef double complex[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, si, sj
    cdef long keep = ~swap_mask
    with nogil:
        for i in range(dim):
            for j in range(dim):
                if sel[i ^ j]:
                    si = (i & keep) | (j & swap_mask)
                    sj = (j & keep) | (i & swap_mask)
                    out[i, j] = src[si, sj]
    return out_arr


cdef inline void _rotate_pair(double[:, :, ::1] m, Py_ssize_t n, Py_ssize_t p, Py_ssize_t q,
                              double c, double s, double pr, double pi, bint columns) nogil:
    # columns: M[:, p], M[:, q] <- c M_p - s conj(ph) M_q, s M_p + c conj(ph) M_q
    # rows:    M[p, :], M[q, :] <- c M_p - s ph M_q,       s M_p + c ph M_q
    cdef Py_ssize_t k
    cdef double xr, xi, yr, yi, zr, zi
    if columns:
        pi = -pi
    for k in range(n):
        if columns:
            xr = m[k, p, 0]; xi = m[k, p, 1]; yr = m[k, q, 0]; yi = m[k, q, 1]
        else:
            xr = m[p, k, 0]; xi = m[p, k, 1]; yr = m[q, k, 0]; yi = m[q, k, 1]
        zr = pr * yr - pi * yi
        zi = pr * yi + pi * yr
        if columns:
            m[k, p, 0] = c * xr - s * zr; m[k, p, 1] = c * xi - s * zi
            m[k, q, 0] = s * xr + c * zr; m[k, q, 1] = s * xi + c * zi
        else:
            m[p, k, 0] = c * xr - s * zr; m[p, k, 1] = c * xi - s * zi
            m[q, k, 0] = s * xr + c * zr; m[q, k, 1] = s * xi + c * zi


def jacobi_eigh(a_in, double tol, int max_sweeps):
    a_arr = np.array(a_in, dtype=np.complex128, copy=True, order="C")
    cdef Py_ssize_t n = a_arr.shape[0]
    v_arr = np.eye(n, dtype=np.complex128)
    cdef double[:, :, ::1] a = a_arr.view(np.float64).reshape(n, n, 2)
    cdef double[:, :, ::1] v = v_arr.view(np.float64).reshape(n, n, 2)
    cdef Py_ssize_t i, j, p, q
    cdef double fro = 0.0, off, g, theta, t, c, s, target, tiny, pr, pi
    cdef int sweep, sweeps = -1
    with nogil:
        for i in range(n):
            for j in range(n):
                fro += a[i, j, 0] * a[i, j, 0] + a[i, j, 1] * a[i, j, 1]
        fro = sqrt(fro)
        target = tol * fro
        tiny = 1e-300 + 1e-18 * fro
        for sweep in range(max_sweeps + 1):
            off = 0.0
            for i in range(n):
                for j in range(n):
                    if i != j:
                        off += a[i, j, 0] * a[i, j, 0] + a[i, j, 1] * a[i, j, 1]
            off = sqrt(off)
            if off <= target:
                sweeps = sweep
                break
            if sweep == max_sweeps:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    g = sqrt(a[p, q, 0] * a[p, q, 0] + a[p, q, 1] * a[p, q, 1])
                    if g <= tiny:
                        continue
                    pr = a[p, q, 0] / g
                    pi = a[p, q, 1] / g
                    theta = (a[q, q, 0] - a[p, p, 0]) / (2.0 * g)
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    _rotate_pair(a, n, p, q, c, s, pr, pi, True)
                    _rotate_pair(a, n, p, q, c, s, pr, pi, False)
                    a[p, q, 0] = 0.0; a[p, q, 1] = 0.0
                    a[q, p, 0] = 0.0; a[q, p, 1] = 0.0
                    a[p, p, 1] = 0.0
                    a[q, q, 1] = 0.0
                    _rotate_pair(v, n, p, q, c, s, pr, pi, True)
    w = np.real(np.diag(a_arr)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v_arr[:, order], sweeps
