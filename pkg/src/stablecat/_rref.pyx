# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over F_p (in place, int64 entries in [0, p))."""

cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef inline i64 _inverse(i64 a, i64 p):
    cdef i64 t = 0, new_t = 1, r = p, new_r = a, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


def rref_inplace(i64[:, ::1] a, i64 p):
    cdef Py_ssize_t rows = a.shape[0]
    cdef Py_ssize_t cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 f, inv, tmp
    pivots = []
    for c in range(cols):
        if r >= rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _inverse(a[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i == r or a[i, c] == 0:
                continue
            f = p - a[i, c]
            for j in range(c, cols):
                if a[r, j] != 0:
                    a[i, j] = (a[i, j] + f * a[r, j]) % p
        pivots.append(c)
        r += 1
    return pivots
