"""First-order formulas over polynomial sign conditions, De Bruijn indexed.

Inside ``ExQ``/``AllQ`` the bound variable is index 0 and every outer index
moves up by one.  Atoms are always ``p ~ 0`` with ``~`` one of ``<, =, <=, !=``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Union

from vsqe.poly import Polynomial, Valuation, format_poly, lower_poly


class Rel(Enum):
    LESS = "Less"
    EQ = "Eq"
    LEQ = "Leq"
    NEQ = "Neq"

    def holds(self, value: Fraction) -> bool:
        if self is Rel.LESS:
            return value < 0
        if self is Rel.EQ:
            return value == 0
        if self is Rel.LEQ:
            return value <= 0
        return value != 0


@dataclass(frozen=True)
class Atom:
    rel: Rel
    poly: Polynomial

    def __str__(self) -> str:
        return f"Atom ({self.rel.value} ({format_poly(self.poly)}))"


@dataclass(frozen=True)
class UniAtom:
    """``a*x^2 + b*x + c ~ 0`` with rational coefficients."""

    rel: Rel
    a: Fraction
    b: Fraction
    c: Fraction

    def value(self, x) -> Fraction:
        return (self.a * x + self.b) * x + self.c

    def holds(self, x) -> bool:
        return self.rel.holds(self.value(x))

    def to_atom(self, var: int = 0) -> Atom:
        x = Polynomial.var(var)
        return Atom(self.rel, self.a * x * x + self.b * x + Polynomial.const(self.c))


class _Const:
    __slots__ = ()

    def __repr__(self) -> str:
        return str(self)


@dataclass(frozen=True, repr=False)
class TrueF(_Const):
    def __str__(self) -> str:
        return "TrueF"


@dataclass(frozen=True, repr=False)
class FalseF(_Const):
    def __str__(self) -> str:
        return "FalseF"


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"And ({self.left}) ({self.right})"


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"Or ({self.left}) ({self.right})"


@dataclass(frozen=True)
class Neg:
    body: Formula

    def __str__(self) -> str:
        return f"Neg ({self.body})"


@dataclass(frozen=True)
class ExQ:
    body: Formula

    def __str__(self) -> str:
        return f"ExQ ({self.body})"


@dataclass(frozen=True)
class AllQ:
    body: Formula

    def __str__(self) -> str:
        return f"AllQ ({self.body})"


Formula = Union[TrueF, FalseF, Atom, And, Or, Neg, ExQ, AllQ]

TRUE = TrueF()
FALSE = FalseF()


class QuantifiedFormulaError(ValueError):
    """Raised when a quantifier-free operation meets ExQ/AllQ."""


# -- folding constructors ---------------------------------------------------


def atom(rel: Rel, p: Polynomial) -> Formula:
    """An atom, folded to ``TRUE``/``FALSE`` when ``p`` is constant."""
    c = p.constant_value()
    if c is not None:
        return TRUE if rel.holds(c) else FALSE
    return Atom(rel, p)


def less(p: Polynomial) -> Formula:
    return atom(Rel.LESS, p)


def eq(p: Polynomial) -> Formula:
    return atom(Rel.EQ, p)


def leq(p: Polynomial) -> Formula:
    return atom(Rel.LEQ, p)


def neq(p: Polynomial) -> Formula:
    return atom(Rel.NEQ, p)


def conj(*fs: Formula) -> Formula:
    return conj_all(fs)


def disj(*fs: Formula) -> Formula:
    return disj_all(fs)


def conj_all(fs: Iterable[Formula]) -> Formula:
    out = None
    for f in fs:
        if f is FALSE or isinstance(f, FalseF):
            return FALSE
        if isinstance(f, TrueF):
            continue
        out = f if out is None else And(out, f)
    return TRUE if out is None else out


def disj_all(fs: Iterable[Formula]) -> Formula:
    out = None
    for f in fs:
        if isinstance(f, TrueF):
            return TRUE
        if isinstance(f, FalseF):
            continue
        out = f if out is None else Or(out, f)
    return FALSE if out is None else out


def exists_n(n: int, f: Formula) -> Formula:
    for _ in range(n):
        f = ExQ(f)
    return f


def conjuncts(f: Formula) -> list[Formula]:
    out = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, And):
            stack.append(g.right)
            stack.append(g.left)
        elif not isinstance(g, TrueF):
            out.append(g)
    return out


def disjuncts(f: Formula) -> list[Formula]:
    out = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Or):
            stack.append(g.right)
            stack.append(g.left)
        elif not isinstance(g, FalseF):
            out.append(g)
    return out


# -- semantics ------------------------------------------------------------


def aeval(at: Atom, v: Valuation) -> bool:
    return at.rel.holds(at.poly.evaluate(v))


def eval_qf(f: Formula, v: Valuation) -> bool:
    """Truth value of a quantifier-free formula under ``v``."""
    match f:
        case TrueF():
            return True
        case FalseF():
            return False
        case Atom():
            return aeval(f, v)
        case And(l, r):
            return eval_qf(l, v) and eval_qf(r, v)
        case Or(l, r):
            return eval_qf(l, v) or eval_qf(r, v)
        case Neg(g):
            return not eval_qf(g, v)
        case ExQ() | AllQ():
            raise QuantifiedFormulaError("eval_qf needs a quantifier-free formula")
    raise TypeError(f"not a formula: {f!r}")


# -- structure ------------------------------------------------------------


def negate_atom(at: Atom) -> Formula:
    p = at.poly
    if at.rel is Rel.LESS:
        return atom(Rel.LEQ, -p)
    if at.rel is Rel.LEQ:
        return atom(Rel.LESS, -p)
    if at.rel is Rel.EQ:
        return atom(Rel.NEQ, p)
    return atom(Rel.EQ, p)


def nnf(f: Formula) -> Formula:
    """Push negations into atoms; the result has no ``Neg`` node."""
    return _nnf(f, False)


def _nnf(f: Formula, neg: bool) -> Formula:
    match f:
        case TrueF():
            return FALSE if neg else TRUE
        case FalseF():
            return TRUE if neg else FALSE
        case Atom():
            return negate_atom(f) if neg else f
        case And(l, r):
            if neg:
                return Or(_nnf(l, True), _nnf(r, True))
            return And(_nnf(l, False), _nnf(r, False))
        case Or(l, r):
            if neg:
                return And(_nnf(l, True), _nnf(r, True))
            return Or(_nnf(l, False), _nnf(r, False))
        case Neg(g):
            return _nnf(g, not neg)
        case ExQ(g):
            return AllQ(_nnf(g, True)) if neg else ExQ(_nnf(g, False))
        case AllQ(g):
            return ExQ(_nnf(g, True)) if neg else AllQ(_nnf(g, False))
    raise TypeError(f"not a formula: {f!r}")


def map_atoms(f: Formula, fn: Callable[[Atom, int], Formula], depth: int = 0) -> Formula:
    """Rebuild ``f`` replacing each atom by ``fn(atom, binder_depth)``."""
    match f:
        case TrueF() | FalseF():
            return f
        case Atom():
            return fn(f, depth)
        case And(l, r):
            return And(map_atoms(l, fn, depth), map_atoms(r, fn, depth))
        case Or(l, r):
            return Or(map_atoms(l, fn, depth), map_atoms(r, fn, depth))
        case Neg(g):
            return Neg(map_atoms(g, fn, depth))
        case ExQ(g):
            return ExQ(map_atoms(g, fn, depth + 1))
        case AllQ(g):
            return AllQ(map_atoms(g, fn, depth + 1))
    raise TypeError(f"not a formula: {f!r}")


def iter_atoms(f: Formula, depth: int = 0):
    """Yield ``(atom, binder_depth)`` pairs."""
    stack = [(f, depth)]
    while stack:
        g, k = stack.pop()
        match g:
            case Atom():
                yield g, k
            case And(l, r) | Or(l, r):
                stack.append((r, k))
                stack.append((l, k))
            case Neg(b):
                stack.append((b, k))
            case ExQ(b) | AllQ(b):
                stack.append((b, k + 1))


def lift_formula(f: Formula, d: int, a: int) -> Formula:
    """Raise free variables ``>= d`` by ``a``; the cutoff follows binders."""
    if a == 0:
        return f
    return map_atoms(f, lambda at, k: Atom(at.rel, at.poly.shift(d + k, a)))


def lower_formula(f: Formula, d: int, a: int) -> Formula:
    """Inverse of :func:`lift_formula`; free variables in ``[d, d+a)`` must be absent."""
    if a == 0:
        return f
    return map_atoms(f, lambda at, k: Atom(at.rel, lower_poly(d + k, a, at.poly)))


def rename_free(f: Formula, fn: Callable[[int], int]) -> Formula:
    """Apply an injective renaming to the free variables of ``f``."""

    def go(at: Atom, k: int) -> Formula:
        return Atom(at.rel, at.poly.rename(lambda v: v if v < k else fn(v - k) + k))

    return map_atoms(f, go)


def mentions_var(f: Formula, var: int) -> bool:
    """Whether free variable ``var`` occurs in ``f``."""
    for at, k in iter_atoms(f):
        if at.poly.mentions(var + k):
            return True
    return False


def is_quantifier_free(f: Formula) -> bool:
    return count_quantifiers(f) == 0


def count_quantifiers(f: Formula) -> int:
    n = 0
    stack = [f]
    while stack:
        g = stack.pop()
        match g:
            case And(l, r) | Or(l, r):
                stack.append(l)
                stack.append(r)
            case Neg(b):
                stack.append(b)
            case ExQ(b) | AllQ(b):
                n += 1
                stack.append(b)
    return n


def size(f: Formula) -> int:
    """Node count."""
    n = 0
    stack = [f]
    while stack:
        g = stack.pop()
        n += 1
        match g:
            case And(l, r) | Or(l, r):
                stack.append(l)
                stack.append(r)
            case Neg(b) | ExQ(b) | AllQ(b):
                stack.append(b)
    return n


def free_variables(f: Formula) -> frozenset:
    out = set()
    for at, k in iter_atoms(f):
        out.update(v - k for v in at.poly.variables() if v >= k)
    return frozenset(out)


def has_neg(f: Formula) -> bool:
    stack = [f]
    while stack:
        g = stack.pop()
        match g:
            case Neg():
                return True
            case And(l, r) | Or(l, r):
                stack.append(l)
                stack.append(r)
            case ExQ(b) | AllQ(b):
                stack.append(b)
    return False


__all__ = [
    "Rel", "Atom", "UniAtom", "TrueF", "FalseF", "And", "Or", "Neg", "ExQ", "AllQ",
    "Formula", "TRUE", "FALSE", "QuantifiedFormulaError",
    "atom", "less", "eq", "leq", "neq", "conj", "disj", "conj_all", "disj_all",
    "exists_n", "conjuncts", "disjuncts", "aeval", "eval_qf", "negate_atom", "nnf",
    "map_atoms", "iter_atoms", "lift_formula", "lower_formula", "rename_free",
    "mentions_var", "is_quantifier_free", "count_quantifiers", "size",
    "free_variables", "has_neg",
]
