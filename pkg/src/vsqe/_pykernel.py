"""Pure-Python sparse polynomial kernels.

A polynomial is a ``dict`` mapping a monomial to a nonzero ``Fraction``.
A monomial is a tuple of ``(var, exp)`` pairs sorted by ``var`` with every
``exp > 0``; the empty tuple is the constant monomial.

``_ckernel.pyx`` compiles the same functions; keep the two in step.
"""

from fractions import Fraction

BACKEND = "python"


def mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1 = len(m1)
    n2 = len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 < v2:
            out.append(m1[i])
            i += 1
        elif v2 < v1:
            out.append(m2[j])
            j += 1
        else:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def add_terms(p, q):
    if len(p) < len(q):
        p, q = q, p
    r = dict(p)
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


def scale_terms(p, c):
    if not c:
        return {}
    return {m: a * c for m, a in p.items()}


def mul_terms(p, q):
    if not p or not q:
        return {}
    if len(p) < len(q):
        p, q = q, p
    r = {}
    for m2, c2 in q.items():
        for m1, c1 in p.items():
            m = mono_mul(m1, m2)
            c = c1 * c2
            s = r.get(m)
            if s is None:
                r[m] = c
            else:
                r[m] = s + c
    return {m: c for m, c in r.items() if c}


def eval_terms(p, values):
    n = len(values)
    total = Fraction(0)
    for m, c in p.items():
        t = c
        for v, e in m:
            x = values[v] if v < n else 0
            if not x:
                t = 0
                break
            t = t * x ** e
        if t:
            total += t
    return total


def degree_terms(p, var):
    d = 0
    for m in p:
        for v, e in m:
            if v == var:
                if e > d:
                    d = e
                break
            if v > var:
                break
    return d


def min_exponent(p, var):
    if not p:
        return 0
    low = None
    for m in p:
        e = 0
        for v, k in m:
            if v == var:
                e = k
                break
            if v > var:
                break
        if e == 0:
            return 0
        if low is None or e < low:
            low = e
    return low


def isolate_terms(p, var, i):
    r = {}
    for m, c in p.items():
        e = 0
        rest = m
        for k, (v, x) in enumerate(m):
            if v == var:
                e = x
                rest = m[:k] + m[k + 1:]
                break
            if v > var:
                break
        if e == i:
            r[rest] = c
    return r


def decompose_terms(p, var):
    """Split ``p`` into ``{i: coefficient dict of var**i}``."""
    out = {}
    for m, c in p.items():
        e = 0
        rest = m
        for k, (v, x) in enumerate(m):
            if v == var:
                e = x
                rest = m[:k] + m[k + 1:]
                break
            if v > var:
                break
        bucket = out.get(e)
        if bucket is None:
            out[e] = {rest: c}
        else:
            bucket[rest] = c
    return out


def shift_terms(p, d, a):
    if not a:
        return dict(p)
    r = {}
    for m, c in p.items():
        r[tuple((v + a if v >= d else v, e) for v, e in m)] = c
    return r


def derivative_terms(p, var):
    r = {}
    for m, c in p.items():
        for k, (v, e) in enumerate(m):
            if v == var:
                if e == 1:
                    nm = m[:k] + m[k + 1:]
                else:
                    nm = m[:k] + ((v, e - 1),) + m[k + 1:]
                r[nm] = c * e
                break
            if v > var:
                break
    return r
