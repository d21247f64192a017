"""Exact sparse multivariate polynomials over the rationals.

Variables are De Bruijn indices (natural numbers).  Coefficients are
``fractions.Fraction``; the zero polynomial has no terms.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterator, Sequence

from vsqe import kernel as _k

Monomial = tuple  # tuple[tuple[int, int], ...], sorted by variable
Valuation = Sequence[Fraction]


class LoweringError(ValueError):
    """Raised when lowering would capture a variable that is still in use."""


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps monomials to coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict | None = None):
        # trusted: callers pass canonical dicts (no zero coefficients)
        self.terms = terms if terms is not None else {}
        self._hash = None

    @classmethod
    def const(cls, c) -> Polynomial:
        c = _coerce(c)
        return cls({(): c} if c else {})

    @classmethod
    def var(cls, i: int, exp: int = 1) -> Polynomial:
        if i < 0:
            raise ValueError("variable index must be nonnegative")
        if exp == 0:
            return ONE
        return cls({((i, exp),): Fraction(1)})

    @classmethod
    def from_terms(cls, items) -> Polynomial:
        """Build from ``(monomial, coeff)`` pairs, merging duplicates.

        A monomial may be given as a mapping ``{var: exp}`` or as a tuple of
        pairs; zero exponents are dropped.
        """
        out: dict = {}
        for mono, c in items:
            c = _coerce(c)
            if isinstance(mono, dict):
                pairs = mono.items()
            else:
                pairs = mono
            key = tuple(sorted((int(v), int(e)) for v, e in pairs if e))
            out[key] = out.get(key, 0) + c
        return cls({m: c for m, c in out.items() if c})

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        t = self.terms
        return not t or (len(t) == 1 and () in t)

    def constant_value(self) -> Fraction | None:
        """The value of a constant polynomial, else ``None``."""
        t = self.terms
        if not t:
            return Fraction(0)
        if len(t) == 1 and () in t:
            return t[()]
        return None

    def variables(self) -> frozenset:
        return frozenset(v for m in self.terms for v, _ in m)

    def mentions(self, var: int) -> bool:
        for m in self.terms:
            for v, _ in m:
                if v == var:
                    return True
        return False

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other)
        return Polynomial(_k.add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(_k.scale_terms(self.terms, _coerce(other)))
        return Polynomial(_k.mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == Polynomial.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- structure --------------------------------------------------------

    def degree_in(self, var: int) -> int:
        return _k.degree_terms(self.terms, var)

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def coefficient(self, var: int, i: int) -> Polynomial:
        return Polynomial(_k.isolate_terms(self.terms, var, i))

    def coefficients(self, var: int) -> list[Polynomial]:
        buckets = _k.decompose_terms(self.terms, var)
        d = max(buckets, default=0)
        return [Polynomial(buckets.get(i, {})) for i in range(d + 1)]

    def derivative(self, var: int) -> Polynomial:
        return Polynomial(_k.derivative_terms(self.terms, var))

    def min_degree_in(self, var: int) -> int:
        return _k.min_exponent(self.terms, var)

    def divide_by_var_power(self, var: int, n: int) -> Polynomial:
        """Exact quotient by ``var**n``; requires ``n <= min_degree_in``."""
        if n == 0:
            return self
        if n > self.min_degree_in(var):
            raise ValueError(f"not divisible by var {var}^{n}")
        out = {}
        for m, c in self.terms.items():
            nm = tuple(
                (v, e - n) if v == var else (v, e)
                for v, e in m
                if v != var or e != n
            )
            out[nm] = c
        return Polynomial(out)

    def evaluate(self, values: Valuation) -> Fraction:
        return _k.eval_terms(self.terms, values)

    def rename(self, fn: Callable[[int], int]) -> Polynomial:
        """Apply an injective variable renaming."""
        out = {}
        for m, c in self.terms.items():
            out[tuple(sorted((fn(v), e) for v, e in m))] = c
        return Polynomial(out)

    def shift(self, d: int, a: int) -> Polynomial:
        if a == 0:
            return self
        return Polynomial(_k.shift_terms(self.terms, d, a))

    # -- display ----------------------------------------------------------

    def monomials(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lexicographic order (x0 > x1 > ...)."""
        if not self.terms:
            return []
        top = max((v for m in self.terms for v, _ in m), default=-1)

        def key(item):
            m = item[0]
            dense = [0] * (top + 1)
            for v, e in m:
                dense[v] = e
            return (sum(dense), dense)

        return sorted(self.terms.items(), key=key, reverse=True)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.monomials())

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r})"


ZERO = Polynomial({})
ONE = Polynomial({(): Fraction(1)})


def _const_text(c: Fraction) -> str:
    if c.denominator == 1:
        return f"Const {c.numerator}"
    return f"Const ({c.numerator}/{c.denominator})"


def format_poly(p: Polynomial) -> str:
    """Render in ``Var i`` / ``Const c`` notation, e.g. ``Const 5 * (Var 1)^2 - Var 0``."""
    items = p.monomials()
    if not items:
        return "Const 0"
    parts = []
    for k, (m, c) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        factors = [f"Var {v}" if e == 1 else f"(Var {v})^{e}" for v, e in m]
        if not factors:
            body = _const_text(a)
        elif a == 1:
            body = " * ".join(factors)
        else:
            body = " * ".join([_const_text(a)] + factors)
        if k == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


# -- operation surface ----------------------------------------------------


def const(c) -> Polynomial:
    return Polynomial.const(c)


def var(i: int) -> Polynomial:
    return Polynomial.var(i)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def power(p: Polynomial, n: int) -> Polynomial:
    return p ** n


def degree_in(p: Polynomial, var: int) -> int:
    """Largest exponent of ``var`` in ``p``; 0 for the zero polynomial."""
    return p.degree_in(var)


def isolate_coefficient(p: Polynomial, var: int, i: int) -> Polynomial:
    """The coefficient of ``var**i`` when ``p`` is read as a polynomial in ``var``."""
    return p.coefficient(var, i)


def nested_decompose(p: Polynomial, var: int) -> list[Polynomial]:
    """``[c0, ..., cd]`` with ``p == sum(ci * var**i)`` and ``d = degree_in(p, var)``."""
    return p.coefficients(var)


def derivative(p: Polynomial, var: int) -> Polynomial:
    return p.derivative(var)


def insertion(v: Valuation, p: Polynomial) -> Fraction:
    """Evaluate ``p`` at ``v``; variables past the end of ``v`` read as 0."""
    return p.evaluate(v)


def partial_insertion(v: Valuation, p: Polynomial, keep: int) -> Polynomial:
    """Substitute ``v`` into every variable except ``keep``."""
    n = len(v)
    out: dict = {}
    for m, c in p.terms.items():
        coeff = c
        e_keep = 0
        for x, e in m:
            if x == keep:
                e_keep = e
                continue
            val = v[x] if x < n else 0
            coeff = coeff * Fraction(val) ** e
            if not coeff:
                break
        if not coeff:
            continue
        key = ((keep, e_keep),) if e_keep else ()
        s = out.get(key, 0) + coeff
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return Polynomial(out)


def lift_poly(d: int, a: int, p: Polynomial) -> Polynomial:
    """Raise every variable ``>= d`` by ``a``."""
    return p.shift(d, a)


def lower_poly(d: int, a: int, p: Polynomial) -> Polynomial:
    """Inverse of :func:`lift_poly`; variables in ``[d, d+a)`` must be absent."""
    if a == 0:
        return p
    for x in p.variables():
        if d <= x < d + a:
            raise LoweringError(f"cannot lower: variable {x} lies in [{d}, {d + a})")
    return Polynomial(_k.shift_terms(p.terms, d + a, -a))
