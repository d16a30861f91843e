# Compiled amplitude kernels. Same contracts as the numpy lane in
# pure.py: in-place operations on C-contiguous complex128 2-D arrays.

from libc.math cimport cos, sin, sqrt
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

BACKEND = "cython"

ctypedef double complex cplx


cdef inline Py_ssize_t _bitrev(Py_ssize_t x, int bits) noexcept:
    cdef Py_ssize_t r = 0
    cdef int i
    for i in range(bits):
        r = (r << 1) | (x & 1)
        x >>= 1
    return r


def walsh_axis0(cplx[:, ::1] a):
    cdef Py_ssize_t n = a.shape[0], m = a.shape[1]
    cdef Py_ssize_t h = 1, base, i, j
    cdef cplx u, v
    cdef double scale
    while h < n:
        for base in range(0, n, 2 * h):
            for i in range(base, base + h):
                for j in range(m):
                    u = a[i, j]
                    v = a[i + h, j]
                    a[i, j] = u + v
                    a[i + h, j] = u - v
        h <<= 1
    scale = 1.0 / sqrt(<double> n)
    for i in range(n):
        for j in range(m):
            a[i, j] = a[i, j] * scale


def walsh_axis1(cplx[:, ::1] a):
    cdef Py_ssize_t n = a.shape[0], m = a.shape[1]
    cdef Py_ssize_t h = 1, base, i, j
    cdef cplx u, v
    cdef double scale
    for i in range(n):
        h = 1
        while h < m:
            for base in range(0, m, 2 * h):
                for j in range(base, base + h):
                    u = a[i, j]
                    v = a[i, j + h]
                    a[i, j] = u + v
                    a[i, j + h] = u - v
            h <<= 1
    scale = 1.0 / sqrt(<double> m)
    for i in range(n):
        for j in range(m):
            a[i, j] = a[i, j] * scale


def fourier_axis0(cplx[:, ::1] a, int sign):
    cdef Py_ssize_t n = a.shape[0], m = a.shape[1]
    if n == 1:
        return
    cdef int bits = 0
    cdef Py_ssize_t t = n
    while t > 1:
        bits += 1
        t >>= 1

    cdef cplx *row = <cplx *> malloc(m * sizeof(cplx))
    cdef cplx *tw = <cplx *> malloc((n // 2) * sizeof(cplx))
    if row == NULL or tw == NULL:
        free(row)
        free(tw)
        raise MemoryError()

    cdef Py_ssize_t i, j, r, h, base
    cdef double theta
    cdef cplx u, v, w
    try:
        for i in range(n):
            r = _bitrev(i, bits)
            if r > i:
                memcpy(row, &a[i, 0], m * sizeof(cplx))
                memcpy(&a[i, 0], &a[r, 0], m * sizeof(cplx))
                memcpy(&a[r, 0], row, m * sizeof(cplx))

        h = 1
        while h < n:
            theta = sign * 3.14159265358979323846 / h
            for j in range(h):
                tw[j] = cos(theta * j) + 1j * sin(theta * j)
            for base in range(0, n, 2 * h):
                for i in range(base, base + h):
                    w = tw[i - base]
                    for j in range(m):
                        u = a[i, j]
                        v = w * a[i + h, j]
                        a[i, j] = u + v
                        a[i + h, j] = u - v
            h <<= 1

        theta = 1.0 / sqrt(<double> n)
        for i in range(n):
            for j in range(m):
                a[i, j] = a[i, j] * theta
    finally:
        free(row)
        free(tw)


def shift_rows(cplx[:, ::1] a, long long[::1] shifts):
    cdef Py_ssize_t n = a.shape[0], m = a.shape[1]
    if shifts.shape[0] != n:
        raise ValueError("one shift per row required")
    cdef cplx *row = <cplx *> malloc(m * sizeof(cplx))
    if row == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, s
    try:
        for i in range(n):
            s = shifts[i] % m
            if s == 0:
                continue
            memcpy(row, &a[i, 0], m * sizeof(cplx))
            for j in range(m):
                a[i, (j + s) % m] = row[j]
    finally:
        free(row)
