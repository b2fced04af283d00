# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernel; same API as ``_kernel_py``.

Coefficients stay Python integers (they grow far beyond 64 bits); the gain
comes from C-level dict access and typed loops over snapshot arrays.
"""

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem
from cpython.ref cimport PyObject

IMPLEMENTATION = "cython"

cdef int BITS = 16
cdef object MASK = (1 << 16) - 1
cdef object HALF = 1 << 15


def add_into(dict acc, dict p, c=1, shift=0):
    cdef object k, a, s
    cdef PyObject* old
    for k, a in p.items():
        k = k + shift
        old = PyDict_GetItem(acc, k)
        if old is NULL:
            s = c * a
        else:
            s = <object>old + c * a
        if s:
            acc[k] = s
        elif old is not NULL:
            del acc[k]


def addmul(dict acc, dict p, dict q, c=1):
    """acc += c * p * q, in place; zero entries may be left behind."""
    cdef list pk, pv
    cdef Py_ssize_t i, m
    cdef object kq, b, k, a
    cdef PyObject* old
    if len(p) < len(q):
        p, q = q, p
    pk = list(p.keys())
    pv = list(p.values())
    m = len(pk)
    for kq, b in q.items():
        if c != 1:
            b = b * c
        for i in range(m):
            k = pk[i] + kq
            a = pv[i] * b
            old = PyDict_GetItem(acc, k)
            if old is NULL:
                PyDict_SetItem(acc, k, a)
            else:
                PyDict_SetItem(acc, k, <object>old + a)


def mul(dict p, dict q):
    cdef dict out = {}
    addmul(out, p, q)
    return prune(out)


def prune(dict p):
    return {k: c for k, c in p.items() if c}


def mul_binomial(dict p, u, ku, v, kv):
    cdef dict out = {k + ku: u * a for k, a in p.items()}
    cdef object k, a, s
    cdef PyObject* old
    for k, a in p.items():
        k = k + kv
        old = PyDict_GetItem(out, k)
        if old is NULL:
            out[k] = v * a
        else:
            s = <object>old + v * a
            if s:
                out[k] = s
            else:
                del out[k]
    return out


cdef tuple _lowest_digit(object delta):
    cdef int j = 0
    cdef object d
    while True:
        d = ((delta + HALF) & MASK) - HALF
        if d:
            return j, d
        delta = (delta - d) >> BITS
        j += 1


def div_binomial(dict p, u, ku, v, kv):
    """Exact quotient p / (u z**ku + v z**kv), or ``None`` if it does not divide."""
    cdef object delta, m0, offset, k, t, base, prev, qk, rem, cur
    cdef int j0, shift, i
    cdef list c
    cdef dict chains, out
    cdef PyObject* hit
    if not p:
        return {}
    if ku < kv:
        u, ku, v, kv = v, kv, u, ku
    delta = ku - kv
    j0, m0 = _lowest_digit(delta)
    shift = BITS * j0
    offset = 0
    for i in range(j0 + 1):
        offset += HALF << (BITS * i)
    chains = {}
    for k in p:
        t = ((((k + offset) >> shift) & MASK) - HALF) // m0
        base = k - t * delta
        hit = PyDict_GetItem(chains, base)
        if hit is NULL:
            chains[base] = [t, t]
        else:
            c = <list>hit
            if t < c[0]:
                c[0] = t
            elif t > c[1]:
                c[1] = t
    out = {}
    for base, c in chains.items():
        if c[0] == c[1]:
            return None
        prev = 0
        k = base + c[0] * delta
        t = c[0]
        while t < c[1]:
            hit = PyDict_GetItem(p, k)
            cur = <object>hit if hit is not NULL else 0
            qk, rem = divmod(cur - u * prev, v)
            if rem:
                return None
            if qk:
                out[k - kv] = qk
            prev = qk
            k = k + delta
            t = t + 1
        hit = PyDict_GetItem(p, k)
        cur = <object>hit if hit is not NULL else 0
        if cur != u * prev:
            return None
    return out
