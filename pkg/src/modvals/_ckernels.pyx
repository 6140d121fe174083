# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled series kernels; see _pykernels for the reference semantics."""

from fractions import Fraction

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

API_VERSION = 2

cdef int64_t LIMIT = (<int64_t>1) << 62


cdef bint _fits(list xs, object bound):
    cdef object x
    for x in xs:
        if type(x) is not int:
            return False
        if x > bound or x < -bound:
            return False
    return True


def conv(list a, list b, Py_ssize_t n):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, top
    cdef list out = [0] * n
    cdef object x, y
    for i in range(min(la, n)):
        x = a[i]
        if not x:
            continue
        top = min(lb, n - i)
        for j in range(top):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def conv_int(list a, list b, Py_ssize_t n):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, top
    cdef Py_ssize_t m = min(la, lb)
    if m == 0 or n == 0:
        return [0] * n
    # safe int64 range: |a|*|b|*len stays below 2^62
    cdef object ma = max(abs(v) for v in a)
    cdef object mb = max(abs(v) for v in b)
    if not (_fits(a, ma) and _fits(b, mb)) or ma * mb * (m + 1) >= LIMIT:
        return conv(a, b, n)
    cdef int64_t *ca = <int64_t *> malloc(la * sizeof(int64_t))
    cdef int64_t *cb = <int64_t *> malloc(lb * sizeof(int64_t))
    cdef int64_t *co = <int64_t *> malloc(n * sizeof(int64_t))
    cdef int64_t xa
    try:
        for i in range(la):
            ca[i] = a[i]
        for i in range(lb):
            cb[i] = b[i]
        for i in range(n):
            co[i] = 0
        for i in range(min(la, n)):
            xa = ca[i]
            if xa == 0:
                continue
            top = min(lb, n - i)
            for j in range(top):
                co[i + j] += xa * cb[j]
        return [co[i] for i in range(n)]
    finally:
        free(ca)
        free(cb)
        free(co)


def recip(list a, Py_ssize_t n):
    cdef Py_ssize_t la = len(a), m, k
    cdef list out = [0] * n
    cdef object inv0, acc, ak
    if n == 0:
        return out
    inv0 = a[0]
    if type(inv0) is int:
        inv0 = inv0 if inv0 in (1, -1) else Fraction(1, inv0)
    else:
        inv0 = 1 / inv0
    out[0] = inv0
    for m in range(1, n):
        acc = 0
        for k in range(1, min(m, la - 1) + 1):
            ak = a[k]
            if ak:
                acc = acc + ak * out[m - k]
        out[m] = -acc * inv0
    return out


def euler_product(list s, Py_ssize_t n):
    cdef list out = [0] * n
    cdef Py_ssize_t m, k, nz
    cdef object acc, sk, qt, r
    if n == 0:
        return out
    out[0] = 1
    # gather nonzero exponents once; Euler products are often sparse
    cdef list idx = [k for k in range(1, min(n, len(s))) if s[k]]
    cdef list val = [s[k] for k in idx]
    nz = len(idx)
    for m in range(1, n):
        acc = 0
        for k in range(nz):
            if <Py_ssize_t>idx[k] > m:
                break
            acc = acc + val[k] * out[m - <Py_ssize_t>idx[k]]
        if type(acc) is int:
            qt, r = divmod(-acc, m)
            if r:
                raise ArithmeticError("non-integral Euler product coefficient")
            out[m] = qt
        else:
            out[m] = -acc / m
    return out


def log_derivative(list a, Py_ssize_t n):
    cdef list s = [0] * n
    cdef Py_ssize_t la = len(a), m, k
    cdef object acc, x
    for m in range(1, n):
        acc = -m * a[m] if m < la else 0
        for k in range(1, m):
            if m - k < la:
                x = a[m - k]
                if x:
                    acc = acc - s[k] * x
        s[m] = acc
    return s
