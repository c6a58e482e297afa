# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inclusion-exclusion kernels.

Subsets T of the rows are visited in increasing binary order, row sums are
accumulated in increasing row index and the degree-capped coefficient DP
runs over columns left to right. _pykernels follows the same order.
"""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef inline int _popcount(long long t) noexcept nogil:
    cdef int count = 0
    while t:
        t &= t - 1
        count += 1
    return count


def ie_poly_real(const double[:, ::1] A, const double[::1] lam, long long lo, long long hi):
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t i, j, k, kmax
    cdef long long t
    cdef double total = 0.0, cj
    cdef double *c = <double *> malloc(n * sizeof(double))
    cdef double *coef = <double *> malloc((m + 1) * sizeof(double))
    if c == NULL or coef == NULL:
        free(c)
        free(coef)
        raise MemoryError()
    with nogil:
        for t in range(lo, hi):
            for j in range(n):
                c[j] = 0.0
            for i in range(m):
                if (t >> i) & 1:
                    for j in range(n):
                        c[j] += A[i, j]
            coef[0] = 1.0
            for k in range(1, m + 1):
                coef[k] = 0.0
            for j in range(n):
                cj = c[j] * lam[j]
                kmax = j + 1 if j + 1 < m else m
                for k in range(kmax, 0, -1):
                    coef[k] += coef[k - 1] * cj
            if (m - _popcount(t)) % 2:
                total += -coef[m]
            else:
                total += coef[m]
    free(c)
    free(coef)
    return total


def ie_poly_complex(const double[:, ::1] A, const double[::1] zre, const double[::1] zim,
                    long long lo, long long hi):
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t i, j, k, kmax
    cdef long long t
    cdef double tre = 0.0, tim = 0.0, cre, cim, pre, pim
    cdef double *c = <double *> malloc(n * sizeof(double))
    cdef double *are = <double *> malloc((m + 1) * sizeof(double))
    cdef double *aim = <double *> malloc((m + 1) * sizeof(double))
    if c == NULL or are == NULL or aim == NULL:
        free(c)
        free(are)
        free(aim)
        raise MemoryError()
    with nogil:
        for t in range(lo, hi):
            for j in range(n):
                c[j] = 0.0
            for i in range(m):
                if (t >> i) & 1:
                    for j in range(n):
                        c[j] += A[i, j]
            are[0] = 1.0
            aim[0] = 0.0
            for k in range(1, m + 1):
                are[k] = 0.0
                aim[k] = 0.0
            for j in range(n):
                # real row sum times complex z_j, as NumPy does it
                cre = c[j] * zre[j] - 0.0 * zim[j]
                cim = c[j] * zim[j] + 0.0 * zre[j]
                kmax = j + 1 if j + 1 < m else m
                for k in range(kmax, 0, -1):
                    pre = are[k - 1] * cre - aim[k - 1] * cim
                    pim = are[k - 1] * cim + aim[k - 1] * cre
                    are[k] += pre
                    aim[k] += pim
            if (m - _popcount(t)) % 2:
                tre += -are[m]
                tim += -aim[m]
            else:
                tre += are[m]
                tim += aim[m]
    free(c)
    free(are)
    free(aim)
    return tre, tim


def ie_companion_real(const double[:, ::1] A, const double[::1] lam, long long lo, long long hi):
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t i, j, k, kmax
    cdef long long t
    cdef double total = 0.0, lj
    cdef double *c = <double *> malloc(n * sizeof(double))
    cdef double *coef = <double *> malloc((m + 1) * sizeof(double))
    if c == NULL or coef == NULL:
        free(c)
        free(coef)
        raise MemoryError()
    with nogil:
        for t in range(lo, hi):
            for j in range(n):
                c[j] = 0.0
            for i in range(m):
                if (t >> i) & 1:
                    for j in range(n):
                        c[j] += A[i, j]
            coef[0] = 1.0
            for k in range(1, m + 1):
                coef[k] = 0.0
            for j in range(n):
                lj = lam[j]
                kmax = j + 1 if j + 1 < m else m
                for k in range(kmax, 0, -1):
                    coef[k] = coef[k] * lj + coef[k - 1] * c[j]
                coef[0] = coef[0] * lj
            if (m - _popcount(t)) % 2:
                total += -coef[m]
            else:
                total += coef[m]
    free(c)
    free(coef)
    return total


def permanent_ryser(const double[:, ::1] B):
    cdef Py_ssize_t k = B.shape[0]
    cdef Py_ssize_t i, flip
    cdef long long step, gray, prev = 0, diff
    cdef double total = 0.0, prod
    cdef double *rowsums = <double *> malloc(k * sizeof(double))
    if rowsums == NULL:
        raise MemoryError()
    with nogil:
        for i in range(k):
            rowsums[i] = 0.0
        for step in range(1, 1LL << k):
            gray = step ^ (step >> 1)
            diff = gray ^ prev
            flip = 0
            while diff > 1:
                diff >>= 1
                flip += 1
            if (gray >> flip) & 1:
                for i in range(k):
                    rowsums[i] = rowsums[i] + B[i, flip]
            else:
                for i in range(k):
                    rowsums[i] = rowsums[i] - B[i, flip]
            prev = gray
            prod = 1.0
            for i in range(k):
                prod *= rowsums[i]
            if (k - _popcount(gray)) % 2:
                total -= prod
            else:
                total += prod
    free(rowsums)
    return total
