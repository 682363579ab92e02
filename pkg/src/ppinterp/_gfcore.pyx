# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-reduction kernel over GF(p).

Same contract as ppinterp._gfcore_py; selected at import by ppinterp.linalg
when the extension is available.
"""

import numpy as np

KERNEL = "cython"


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; a is assumed nonzero mod p
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef Py_ssize_t _rank_inplace(long long[:, ::1] a, long long p):
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f, v
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                v = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = v
        inv = _inv_mod(a[r, c], p)
        for j in range(c, n):
            a[r, j] = a[r, j] * inv % p
        for i in range(r + 1, m):
            f = a[i, c]
            if f != 0:
                for j in range(c, n):
                    v = (a[i, j] - f * a[r, j]) % p
                    if v < 0:
                        v += p
                    a[i, j] = v
        r += 1
    return r


def rank_mod(a, long long p):
    """Rank of an integer matrix over GF(p)."""
    arr = np.array(a, dtype=np.int64, order="C", copy=True)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if arr.size == 0:
        return 0
    arr %= p
    return _rank_inplace(arr, p)
