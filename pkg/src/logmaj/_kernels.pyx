# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels.

Each function mirrors one in :mod:`logmaj._fallback` and must produce the
same mathematical result; the two are compared in the test-suite and in
``benchmarks/bench_kernels.py``.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, hypot

cnp.import_array()

ctypedef double complex cplx


cdef inline double cabs2(cplx z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double cmod(cplx z) nogil:
    return hypot(z.real, z.imag)


cdef inline cplx cconj(cplx z) nogil:
    return z.real - 1j * z.imag


cdef inline void _rotation(double app, double aqq, cplx apq,
                           double *c, double *s, double *t, cplx *e) nogil:
    # Rotation G = [[c, s e], [-s conj(e), c]] annihilating apq in G* A G.
    cdef double g = cmod(apq)
    cdef double theta = (aqq - app) / (2.0 * g)
    if fabs(theta) > 1e150:
        t[0] = 0.5 / theta
    elif theta >= 0.0:
        t[0] = 1.0 / (theta + sqrt(theta * theta + 1.0))
    else:
        t[0] = -1.0 / (-theta + sqrt(theta * theta + 1.0))
    c[0] = 1.0 / sqrt(t[0] * t[0] + 1.0)
    s[0] = t[0] * c[0]
    e[0] = apq / g


def jacobi_eigh(a_in, double tol=1e-14, int max_sweeps=100):
    """Cyclic Jacobi on a Hermitian matrix; returns (eigenvalues, vectors, sweeps).

    Eigenvalues are returned unsorted, in diagonal order.
    """
    cdef cnp.ndarray[cplx, ndim=2] a_arr = np.array(a_in, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a_arr.shape[0]
    cdef cnp.ndarray[cplx, ndim=2] v_arr = np.eye(n, dtype=np.complex128)
    cdef cplx[:, ::1] a = a_arr
    cdef cplx[:, ::1] v = v_arr
    cdef Py_ssize_t i, j, p, q, k
    cdef double c, s, t, g, off, total, app, aqq
    cdef cplx e, x, y, se, sce
    cdef int sweep = 0

    total = 0.0
    for i in range(n):
        a[i, i] = a[i, i].real
        for j in range(n):
            total += cabs2(a[i, j])
    total = sqrt(total)

    with nogil:
        while True:
            off = 0.0
            for i in range(n):
                for j in range(n):
                    if i != j:
                        off += cabs2(a[i, j])
            off = sqrt(off)
            if off <= tol * (1.0 + total):
                break
            if sweep >= max_sweeps:
                break
            sweep += 1
            for p in range(n - 1):
                for q in range(p + 1, n):
                    g = cmod(a[p, q])
                    if g == 0.0:
                        continue
                    app = a[p, p].real
                    aqq = a[q, q].real
                    _rotation(app, aqq, a[p, q], &c, &s, &t, &e)
                    se = s * e
                    sce = s * cconj(e)
                    for k in range(n):
                        x = a[k, p]
                        y = a[k, q]
                        a[k, p] = c * x - sce * y
                        a[k, q] = se * x + c * y
                    for k in range(n):
                        x = a[p, k]
                        y = a[q, k]
                        a[p, k] = c * x - se * y
                        a[q, k] = sce * x + c * y
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    a[p, p] = app - t * g
                    a[q, q] = aqq + t * g
                    for k in range(n):
                        x = v[k, p]
                        y = v[k, q]
                        v[k, p] = c * x - sce * y
                        v[k, q] = se * x + c * y

    w = np.empty(n, dtype=np.float64)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v_arr, sweep


def jacobi_singular_values(a_in, double tol=1e-15, int max_sweeps=100):
    """One-sided (Hestenes) Jacobi; returns (column norms, sweeps), unsorted."""
    arr = np.asarray(a_in, dtype=np.complex128)
    if arr.shape[0] < arr.shape[1]:
        arr = arr.conj().T
    cdef cnp.ndarray[cplx, ndim=2] b_arr = np.array(arr, dtype=np.complex128, order="F", copy=True)
    cdef cplx[::1, :] b = b_arr
    cdef Py_ssize_t m = b_arr.shape[0]
    cdef Py_ssize_t n = b_arr.shape[1]
    cdef Py_ssize_t p, q, k
    cdef double alpha, beta, c, s, t
    cdef cplx gamma, e, x, y, se, sce
    cdef int sweep = 0
    cdef bint rotated = True

    with nogil:
        while rotated and sweep < max_sweeps:
            rotated = False
            sweep += 1
            for p in range(n - 1):
                for q in range(p + 1, n):
                    alpha = 0.0
                    beta = 0.0
                    gamma = 0.0
                    for k in range(m):
                        alpha += cabs2(b[k, p])
                        beta += cabs2(b[k, q])
                        gamma += cconj(b[k, p]) * b[k, q]
                    if cmod(gamma) <= tol * sqrt(alpha * beta) or cmod(gamma) == 0.0:
                        continue
                    rotated = True
                    _rotation(alpha, beta, gamma, &c, &s, &t, &e)
                    se = s * e
                    sce = s * cconj(e)
                    for k in range(m):
                        x = b[k, p]
                        y = b[k, q]
                        b[k, p] = c * x - sce * y
                        b[k, q] = se * x + c * y

    out = np.empty(n, dtype=np.float64)
    cdef double acc
    for p in range(n):
        acc = 0.0
        for k in range(m):
            acc += cabs2(b[k, p])
        out[p] = sqrt(acc)
    return out, sweep


cdef void _hessenberg(cplx[:, ::1] h, Py_ssize_t n) nogil:
    # Householder reduction in place; only the Hessenberg part is meaningful.
    cdef Py_ssize_t j, i, col
    cdef double norm, alpha_mod, vnorm2
    cdef cplx alpha, phase, acc
    cdef cplx v[64]
    for j in range(n - 2):
        norm = 0.0
        for i in range(j + 1, n):
            norm += cabs2(h[i, j])
        norm = sqrt(norm)
        if norm == 0.0:
            continue
        alpha = h[j + 1, j]
        alpha_mod = cmod(alpha)
        if alpha_mod == 0.0:
            phase = 1.0
        else:
            phase = alpha / alpha_mod
        for i in range(n - j - 1):
            v[i] = h[j + 1 + i, j]
        v[0] = v[0] + phase * norm
        vnorm2 = 0.0
        for i in range(n - j - 1):
            vnorm2 += cabs2(v[i])
        if vnorm2 == 0.0:
            continue
        # rows: H <- (I - 2 v v* / |v|^2) H
        for col in range(n):
            acc = 0.0
            for i in range(n - j - 1):
                acc = acc + cconj(v[i]) * h[j + 1 + i, col]
            acc = 2.0 * acc / vnorm2
            for i in range(n - j - 1):
                h[j + 1 + i, col] = h[j + 1 + i, col] - v[i] * acc
        # columns: H <- H (I - 2 v v* / |v|^2)
        for i in range(n):
            acc = 0.0
            for col in range(n - j - 1):
                acc = acc + h[i, j + 1 + col] * v[col]
            acc = 2.0 * acc / vnorm2
            for col in range(n - j - 1):
                h[i, j + 1 + col] = h[i, j + 1 + col] - acc * cconj(v[col])
        for i in range(j + 2, n):
            h[i, j] = 0.0


cdef cplx _wilkinson(cplx a, cplx b, cplx c, cplx d):
    # eigenvalue of [[a, b], [c, d]] closest to d
    cdef cplx tr = a + d
    cdef cplx det = a * d - b * c
    cdef cplx disc = (tr * tr / 4.0 - det) ** 0.5
    cdef cplx l1 = tr / 2.0 + disc
    cdef cplx l2 = tr / 2.0 - disc
    if cabs2(l1 - d) <= cabs2(l2 - d):
        return l1
    return l2


def hessenberg_eigvals(a_in, int max_iter_per_value=60):
    """Eigenvalues of a general complex matrix by shifted QR on its Hessenberg form."""
    cdef cnp.ndarray[cplx, ndim=2] h_arr = np.array(a_in, dtype=np.complex128, order="C", copy=True)
    cdef cplx[:, ::1] h = h_arr
    cdef Py_ssize_t n = h_arr.shape[0]
    if n > 64:
        raise ValueError("dimension above 64")
    _hessenberg(h, n)
    out = np.empty(n, dtype=np.complex128)
    cdef Py_ssize_t hi = n - 1, lo, l, j, col, row, top
    cdef int iters = 0
    cdef double eps = 2.220446049250313e-16, r
    cdef cplx mu, x, y, cg, sg, p0, p1
    cdef cplx cs[64]
    cdef cplx ss[64]
    while hi >= 0:
        if hi == 0:
            out[0] = h[0, 0]
            break
        l = hi
        while l > 0:
            if cmod(h[l, l - 1]) <= eps * (cmod(h[l, l]) + cmod(h[l - 1, l - 1])):
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            out[hi] = h[hi, hi]
            hi -= 1
            iters = 0
            continue
        iters += 1
        if iters > max_iter_per_value:
            raise ArithmeticError("QR iteration did not converge")
        if iters % 11 == 0:
            mu = h[hi, hi] + 0.75 * cmod(h[hi, hi - 1])
        else:
            mu = _wilkinson(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
        lo = l
        for j in range(lo, hi + 1):
            h[j, j] = h[j, j] - mu
        for j in range(lo, hi):
            x = h[j, j]
            y = h[j + 1, j]
            r = sqrt(cabs2(x) + cabs2(y))
            if r == 0.0:
                cg = 1.0
                sg = 0.0
            else:
                cg = x / r
                sg = y / r
            cs[j] = cg
            ss[j] = sg
            for col in range(j, hi + 1):
                p0 = h[j, col]
                p1 = h[j + 1, col]
                h[j, col] = cconj(cg) * p0 + cconj(sg) * p1
                h[j + 1, col] = -sg * p0 + cg * p1
        for j in range(lo, hi):
            cg = cs[j]
            sg = ss[j]
            top = j + 2 if j + 2 <= hi else hi
            for row in range(lo, top + 1):
                p0 = h[row, j]
                p1 = h[row, j + 1]
                h[row, j] = cg * p0 + sg * p1
                h[row, j + 1] = -cconj(sg) * p0 + cconj(cg) * p1
        for j in range(lo, hi + 1):
            h[j, j] = h[j, j] + mu
    return out
