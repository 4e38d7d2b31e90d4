# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled term-map kernel; semantics identical to _termops_py."""

BACKEND_NAME = "cython"


cdef inline tuple _add_exp(tuple ea, tuple eb):
    cdef Py_ssize_t i, n = len(ea)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = ea[i] + eb[i]
    return tuple(out)


def add_terms(dict a, dict b):
    cdef dict out = dict(a)
    cdef object exp, c, cur
    for exp, c in b.items():
        cur = out.get(exp)
        if cur is None:
            out[exp] = c
        else:
            cur = cur + c
            if cur:
                out[exp] = cur
            else:
                del out[exp]
    return out


def sub_terms(dict a, dict b):
    cdef dict out = dict(a)
    cdef object exp, c, cur
    for exp, c in b.items():
        cur = out.get(exp)
        if cur is None:
            out[exp] = -c
        else:
            cur = cur - c
            if cur:
                out[exp] = cur
            else:
                del out[exp]
    return out


def neg_terms(dict a):
    cdef dict out = {}
    cdef object exp, c
    for exp, c in a.items():
        out[exp] = -c
    return out


def scale_terms(dict a, c):
    cdef dict out = {}
    cdef object exp, v
    if not c:
        return out
    for exp, v in a.items():
        out[exp] = v * c
    return out


def mul_terms(dict a, dict b):
    cdef dict out = {}
    if not a or not b:
        return out
    if len(a) > len(b):
        a, b = b, a
    cdef object ea, ca, eb, cb, c, cur
    cdef tuple exp
    for ea, ca in a.items():
        for eb, cb in b.items():
            exp = _add_exp(<tuple> ea, <tuple> eb)
            c = ca * cb
            cur = out.get(exp)
            if cur is None:
                out[exp] = c
            else:
                cur = cur + c
                if cur:
                    out[exp] = cur
                else:
                    del out[exp]
    return out


def mul_into(dict acc, dict a, dict b):
    """acc += a * b, in place."""
    if not a or not b:
        return
    if len(a) > len(b):
        a, b = b, a
    cdef object ea, ca, eb, cb, c, cur
    cdef tuple exp
    for ea, ca in a.items():
        for eb, cb in b.items():
            exp = _add_exp(<tuple> ea, <tuple> eb)
            c = ca * cb
            cur = acc.get(exp)
            if cur is None:
                acc[exp] = c
            else:
                cur = cur + c
                if cur:
                    acc[exp] = cur
                else:
                    del acc[exp]


def matmul_terms(list a, list b, Py_ssize_t n, Py_ssize_t k, Py_ssize_t m):
    """Row-major (n x k) @ (k x m) over term maps."""
    cdef list out = []
    cdef Py_ssize_t i, j, s
    cdef dict acc, left, right
    for i in range(n):
        for j in range(m):
            acc = {}
            for s in range(k):
                left = <dict> a[i * k + s]
                if left:
                    right = <dict> b[s * m + j]
                    if right:
                        mul_into(acc, left, right)
            out.append(acc)
    return out
