# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernels; mirrors ``_pykernel``."""

from fractions import Fraction

BACKEND = "cython"


cpdef tuple mono_mul(tuple m1, tuple m2):
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t n1 = len(m1), n2 = len(m2)
    cdef long v1, v2
    cdef tuple a, b
    cdef list out
    if n1 == 0:
        return m2
    if n2 == 0:
        return m1
    out = []
    while i < n1 and j < n2:
        a = <tuple>m1[i]
        b = <tuple>m2[j]
        v1 = a[0]
        v2 = b[0]
        if v1 < v2:
            out.append(a)
            i += 1
        elif v2 < v1:
            out.append(b)
            j += 1
        else:
            out.append((v1, <long>a[1] + <long>b[1]))
            i += 1
            j += 1
    while i < n1:
        out.append(m1[i])
        i += 1
    while j < n2:
        out.append(m2[j])
        j += 1
    return tuple(out)


cpdef dict add_terms(dict p, dict q):
    cdef dict r
    if len(p) < len(q):
        p, q = q, p
    r = p.copy()
    for m, c in q.items():
        s = r.get(m)
        if s is None:
            r[m] = c
        else:
            s = s + c
            if s:
                r[m] = s
            else:
                del r[m]
    return r


cpdef dict scale_terms(dict p, c):
    if not c:
        return {}
    return {m: a * c for m, a in p.items()}


cpdef dict mul_terms(dict p, dict q):
    cdef dict r
    cdef tuple m
    if not p or not q:
        return {}
    if len(p) < len(q):
        p, q = q, p
    r = {}
    for m2, c2 in q.items():
        for m1, c1 in p.items():
            m = mono_mul(<tuple>m1, <tuple>m2)
            c = c1 * c2
            s = r.get(m)
            if s is None:
                r[m] = c
            else:
                r[m] = s + c
    return {k: v for k, v in r.items() if v}


cpdef eval_terms(dict p, values):
    cdef Py_ssize_t n = len(values)
    cdef long v, e
    cdef tuple m, pair
    total = Fraction(0)
    for mm, c in p.items():
        m = <tuple>mm
        t = c
        for pair in m:
            v = pair[0]
            e = pair[1]
            x = values[v] if v < n else 0
            if not x:
                t = 0
                break
            t = t * x ** e
        if t:
            total += t
    return total


cpdef long degree_terms(dict p, long var):
    cdef long d = 0, v, e
    cdef tuple pair
    for m in p:
        for pair in <tuple>m:
            v = pair[0]
            if v == var:
                e = pair[1]
                if e > d:
                    d = e
                break
            if v > var:
                break
    return d


cpdef long min_exponent(dict p, long var):
    cdef long low = -1, e, v
    cdef tuple pair
    if not p:
        return 0
    for m in p:
        e = 0
        for pair in <tuple>m:
            v = pair[0]
            if v == var:
                e = pair[1]
                break
            if v > var:
                break
        if e == 0:
            return 0
        if low < 0 or e < low:
            low = e
    return low


cpdef dict isolate_terms(dict p, long var, long i):
    cdef dict r = {}
    cdef long e, v
    cdef Py_ssize_t k, n
    cdef tuple m, rest, pair
    for mm, c in p.items():
        m = <tuple>mm
        e = 0
        rest = m
        n = len(m)
        for k in range(n):
            pair = <tuple>m[k]
            v = pair[0]
            if v == var:
                e = pair[1]
                rest = m[:k] + m[k + 1:]
                break
            if v > var:
                break
        if e == i:
            r[rest] = c
    return r


cpdef dict decompose_terms(dict p, long var):
    cdef dict out = {}
    cdef long e, v
    cdef Py_ssize_t k, n
    cdef tuple m, rest, pair
    for mm, c in p.items():
        m = <tuple>mm
        e = 0
        rest = m
        n = len(m)
        for k in range(n):
            pair = <tuple>m[k]
            v = pair[0]
            if v == var:
                e = pair[1]
                rest = m[:k] + m[k + 1:]
                break
            if v > var:
                break
        bucket = out.get(e)
        if bucket is None:
            out[e] = {rest: c}
        else:
            (<dict>bucket)[rest] = c
    return out


cpdef dict shift_terms(dict p, long d, long a):
    cdef dict r = {}
    cdef long v
    cdef tuple pair
    cdef list nm
    if a == 0:
        return p.copy()
    for m, c in p.items():
        nm = []
        for pair in <tuple>m:
            v = pair[0]
            if v >= d:
                nm.append((v + a, pair[1]))
            else:
                nm.append(pair)
        r[tuple(nm)] = c
    return r


cpdef dict derivative_terms(dict p, long var):
    cdef dict r = {}
    cdef long v, e
    cdef Py_ssize_t k, n
    cdef tuple m, pair, nm
    for mm, c in p.items():
        m = <tuple>mm
        n = len(m)
        for k in range(n):
            pair = <tuple>m[k]
            v = pair[0]
            if v == var:
                e = pair[1]
                if e == 1:
                    nm = m[:k] + m[k + 1:]
                else:
                    nm = m[:k] + ((v, e - 1),) + m[k + 1:]
                r[nm] = c * e
                break
            if v > var:
                break
    return r
