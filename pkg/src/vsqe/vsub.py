"""Virtual substitution of fractions, square-root expressions, -inf and r+eps.

Every substitution takes the index ``var`` of the variable being replaced and
returns a quantifier-free formula in which ``var`` no longer occurs.  Side
conditions (nonzero denominators, nonnegative radicands) are the caller's
business; :func:`elim_var` and :func:`elim_var_equality` attach them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence, Union

from vsqe.formula import (
    FALSE,
    TRUE,
    AllQ,
    And,
    Atom,
    ExQ,
    FalseF,
    Formula,
    Neg,
    Or,
    Rel,
    TrueF,
    atom,
    conj,
    conj_all,
    disj,
    disj_all,
    eq,
    leq,
    less,
    neq,
    rename_free,
)
from vsqe.poly import ONE, ZERO, Polynomial


class DegreeError(ValueError):
    """An atom is beyond quadratic in the variable being eliminated."""


@dataclass(frozen=True)
class LinRoot:
    """The value ``num / den``."""

    num: Polynomial
    den: Polynomial

    def lifted(self, k: int) -> LinRoot:
        if k == 0:
            return self
        return LinRoot(self.num.shift(0, k), self.den.shift(0, k))


@dataclass(frozen=True)
class QuadRoot:
    """The value ``(a + b*sqrt(c)) / d``."""

    a: Polynomial
    b: Polynomial
    c: Polynomial
    d: Polynomial

    def lifted(self, k: int) -> QuadRoot:
        if k == 0:
            return self
        return QuadRoot(*(p.shift(0, k) for p in (self.a, self.b, self.c, self.d)))


Root = Union[LinRoot, QuadRoot]


class PointKind(Enum):
    NEG_INFINITY = "-inf"
    EXACT = "exact"
    EPSILON = "eps"


@dataclass(frozen=True)
class SamplePoint:
    kind: PointKind
    root: Root | None = None
    guard: Formula = field(default=TRUE)


NEG_INFINITY = SamplePoint(PointKind.NEG_INFINITY)


def _coeffs(p: Polynomial, var: int) -> tuple[Polynomial, Polynomial, Polynomial]:
    cs = p.coefficients(var)
    if len(cs) > 3:
        raise DegreeError(f"degree {len(cs) - 1} in variable {var}")
    while len(cs) < 3:
        cs.append(ZERO)
    return cs[2], cs[1], cs[0]


def _powers(p: Polynomial, n: int) -> list[Polynomial]:
    out = [ONE]
    for _ in range(n):
        out.append(out[-1] * p)
    return out


# -- equality-style substitutions -------------------------------------------


def linear_substitution(var: int, a: Polynomial, b: Polynomial, at: Atom) -> Formula:
    """Substitute ``a/b`` for ``var`` in ``at``, assuming ``b != 0``."""
    p = at.poly
    d = p.degree_in(var)
    if d == 0:
        return at
    cs = p.coefficients(var)
    pa = _powers(a, d)
    pb = _powers(b, d + 1)
    total = ZERO
    for i, ci in enumerate(cs):
        if ci.terms:
            total = total + ci * pa[i] * pb[d - i]
    if at.rel in (Rel.LESS, Rel.LEQ) and d % 2 == 1:
        total = total * b
    return atom(at.rel, total)


def sqrt_case_split(A: Polynomial, B: Polynomial, c: Polynomial, rel: Rel) -> Formula:
    """A formula equivalent to ``A + B*sqrt(c) rel 0``, assuming ``c >= 0``."""
    if not B.terms or not c.terms:
        return atom(rel, A)
    A2 = A * A
    B2c = B * B * c
    if rel is Rel.EQ:
        return conj(leq(A * B), eq(A2 - B2c))
    if rel is Rel.LESS:
        return disj(
            conj(less(A), less(B2c - A2)),
            conj(leq(B), disj(less(A), less(A2 - B2c))),
        )
    if rel is Rel.LEQ:
        return disj(
            conj(leq(A), leq(B2c - A2)),
            conj(leq(B), leq(A2 - B2c)),
        )
    return disj(less(-(A * B)), neq(A2 - B2c))


def quadratic_sub(
    var: int,
    a: Polynomial,
    b: Polynomial,
    c: Polynomial,
    d: Polynomial,
    at: Atom,
) -> Formula:
    """Substitute ``(a + b*sqrt(c)) / d`` for ``var``, assuming ``d != 0, c >= 0``."""
    p = at.poly
    deg = p.degree_in(var)
    if deg == 0:
        return at
    # stage 1: clear the denominator of (a + b*y)/d, reusing var for y
    x = Polynomial.var(var)
    numer = a + b * x
    cs = p.coefficients(var)
    pn = _powers(numer, deg)
    pd = _powers(d, deg + 1)
    stage1 = ZERO
    for i, ci in enumerate(cs):
        if ci.terms:
            stage1 = stage1 + ci * pn[i] * pd[deg - i]
    if at.rel in (Rel.LESS, Rel.LEQ) and deg % 2 == 1:
        stage1 = stage1 * d
    # stage 2: y = sqrt(c) splits even powers into A and odd powers into B
    parts = stage1.coefficients(var)
    pc = _powers(c, len(parts) // 2 + 1)
    A = ZERO
    B = ZERO
    for i, ci in enumerate(parts):
        if not ci.terms:
            continue
        if i % 2 == 0:
            A = A + ci * pc[i // 2]
        else:
            B = B + ci * pc[i // 2]
    # stage 3
    return sqrt_case_split(A, B, c, at.rel)


def substitute_root(var: int, root: Root, at: Atom) -> Formula:
    if isinstance(root, LinRoot):
        return linear_substitution(var, root.num, root.den, at)
    return quadratic_sub(var, root.a, root.b, root.c, root.d, at)


# -- -inf and r+eps ---------------------------------------------------------


def _all_zero(a: Polynomial, b: Polynomial, c: Polynomial) -> Formula:
    return conj(eq(a), eq(b), eq(c))


def _some_nonzero(a: Polynomial, b: Polynomial, c: Polynomial) -> Formula:
    return disj(neq(a), neq(b), neq(c))


def subst_neg_infinity(var: int, at: Atom) -> Formula:
    """The truth of ``at`` for all sufficiently negative values of ``var``."""
    a, b, c = _coeffs(at.poly, var)
    if at.rel is Rel.EQ:
        return _all_zero(a, b, c)
    if at.rel is Rel.NEQ:
        return _some_nonzero(a, b, c)
    # leading coefficient decides; odd degree flips sign
    strict = disj(
        less(a),
        conj(eq(a), disj(less(-b), conj(eq(b), less(c)))),
    )
    if at.rel is Rel.LESS:
        return strict
    return disj(_all_zero(a, b, c), strict)


def _less_epsilon(var: int, root: Root, p: Polynomial) -> Formula:
    if p.degree_in(var) == 0:
        return less(p)
    return disj(
        substitute_root(var, root, Atom(Rel.LESS, p)),
        conj(
            substitute_root(var, root, Atom(Rel.EQ, p)),
            _less_epsilon(var, root, p.derivative(var)),
        ),
    )


def subst_epsilon(var: int, root: Root, at: Atom) -> Formula:
    """The truth of ``at`` on ``(r, r + delta]`` for some ``delta > 0``."""
    a, b, c = _coeffs(at.poly, var)
    if at.rel is Rel.EQ:
        return _all_zero(a, b, c)
    if at.rel is Rel.NEQ:
        return _some_nonzero(a, b, c)
    strict = _less_epsilon(var, root, at.poly)
    if at.rel is Rel.LESS:
        return strict
    return disj(_all_zero(a, b, c), strict)


def substitute_point(var: int, point: SamplePoint, at: Atom) -> Formula:
    if point.kind is PointKind.NEG_INFINITY:
        return subst_neg_infinity(var, at)
    if point.kind is PointKind.EXACT:
        return substitute_root(var, point.root, at)
    return subst_epsilon(var, point.root, at)


def substitute_formula(var: int, point: SamplePoint, f: Formula, depth: int = 0) -> Formula:
    """Map :func:`substitute_point` over every atom of ``f``, under binders too."""
    match f:
        case TrueF() | FalseF():
            return f
        case Atom():
            if not f.poly.mentions(var + depth):
                return f
            p = point
            if depth and p.root is not None:
                p = SamplePoint(p.kind, p.root.lifted(depth))
            return substitute_point(var + depth, p, f)
        case And(l, r):
            return conj(substitute_formula(var, point, l, depth), substitute_formula(var, point, r, depth))
        case Or(l, r):
            return disj(substitute_formula(var, point, l, depth), substitute_formula(var, point, r, depth))
        case Neg(g):
            inner = substitute_formula(var, point, g, depth)
            if isinstance(inner, TrueF):
                return FALSE
            if isinstance(inner, FalseF):
                return TRUE
            return Neg(inner)
        case ExQ(g):
            inner = substitute_formula(var, point, g, depth + 1)
            return inner if isinstance(inner, (TrueF, FalseF)) else ExQ(inner)
        case AllQ(g):
            inner = substitute_formula(var, point, g, depth + 1)
            return inner if isinstance(inner, (TrueF, FalseF)) else AllQ(inner)
    raise TypeError(f"not a formula: {f!r}")


# -- sample points and elimination -------------------------------------------


def atom_roots(var: int, at: Atom) -> list[tuple[Root, Formula]]:
    """Guarded candidate roots of ``at.poly`` in ``var`` (none for var-free polys)."""
    a, b, c = _coeffs(at.poly, var)
    out: list[tuple[Root, Formula]] = []
    if not b.terms and not a.terms:
        return out
    lin_guard = conj(eq(a), neq(b))
    if not isinstance(lin_guard, FalseF):
        out.append((LinRoot(-c, b), lin_guard))
    if a.terms:
        disc = b * b - 4 * a * c
        quad_guard = conj(neq(a), leq(-disc))
        if not isinstance(quad_guard, FalseF):
            two_a = 2 * a
            out.append((QuadRoot(-b, ONE, disc, two_a), quad_guard))
            out.append((QuadRoot(-b, -ONE, disc, two_a), quad_guard))
    return out


def collect_roots(var: int, atoms: Sequence[Atom]) -> tuple[list[SamplePoint], list[SamplePoint]]:
    """Exact points from ``=``/``<=`` atoms and eps points from ``<``/``!=`` atoms."""
    exact: list[SamplePoint] = []
    eps: list[SamplePoint] = []
    for at in atoms:
        if at.poly.degree_in(var) > 2:
            raise DegreeError(f"degree {at.poly.degree_in(var)} in variable {var}")
        kind = PointKind.EXACT if at.rel in (Rel.EQ, Rel.LEQ) else PointKind.EPSILON
        bucket = exact if kind is PointKind.EXACT else eps
        for root, guard in atom_roots(var, at):
            bucket.append(SamplePoint(kind, root, guard))
    return exact, eps


def _branch(var: int, point: SamplePoint, atoms: Sequence[Atom], ctx: Sequence[Formula]) -> Formula:
    if isinstance(point.guard, FalseF):
        return FALSE
    parts = [point.guard]
    for at in atoms:
        g = substitute_point(var, point, at) if at.poly.mentions(var) else at
        if isinstance(g, FalseF):
            return FALSE
        parts.append(g)
    for f in ctx:
        g = substitute_formula(var, point, f)
        if isinstance(g, FalseF):
            return FALSE
        parts.append(g)
    return conj_all(parts)


def elim_var(var: int, atoms: Sequence[Atom], ctx: Sequence[Formula] = ()) -> Formula:
    """Eliminate ``exists var`` from the conjunction of ``atoms`` and ``ctx``.

    Sample points come from ``atoms`` only, so the equivalence needs every
    ``ctx`` entry that mentions ``var`` to be handled elsewhere; the engine
    only calls this with ``ctx`` free of ``var``.
    """
    for at in atoms:
        if at.poly.degree_in(var) > 2:
            raise DegreeError(f"degree {at.poly.degree_in(var)} in variable {var}")
    exact, eps = collect_roots(var, atoms)
    branches = [_branch(var, NEG_INFINITY, atoms, ctx)]
    for point in exact:
        branches.append(_branch(var, point, atoms, ctx))
    for point in eps:
        branches.append(_branch(var, point, atoms, ctx))
    return disj_all(branches)


def retain_exists(var: int, atoms: Sequence[Atom], ctx: Sequence[Formula]) -> Formula:
    """``exists var. (atoms and ctx)`` rewritten so the binder sits at index 0.

    The result lives in the same index context as the inputs but no longer has
    ``var`` free.
    """
    body = conj_all(list(atoms) + list(ctx))
    if isinstance(body, (TrueF, FalseF)):
        return body
    moved = rename_free(body, lambda v: 0 if v == var else v + 1)
    return ExQ(moved)


RestFn = Callable[[Sequence[Atom], Sequence[Formula]], Formula]


def elim_var_equality(
    var: int,
    atoms: Sequence[Atom],
    ctx: Sequence[Formula],
    target: int,
    rest: RestFn | None = None,
    lucky: bool = False,
) -> Formula:
    """Eliminate ``exists var`` using the equation ``atoms[target]``.

    Three branches: every coefficient zero (``rest`` decides the remaining
    conjunction, by default by keeping the quantifier), a linear root, and the
    two quadratic roots.  ``lucky`` drops the all-zero branch, which is sound
    when some coefficient is a nonzero constant.
    """
    at = atoms[target]
    if at.rel is not Rel.EQ:
        raise ValueError("target atom must be an equation")
    a, b, c = _coeffs(at.poly, var)
    others = [x for i, x in enumerate(atoms) if i != target]
    branches = []
    if not lucky:
        guard = conj(eq(a), eq(b), eq(c))
        if not isinstance(guard, FalseF):
            body = rest(others, ctx) if rest is not None else retain_exists(var, others, ctx)
            branches.append(conj(guard, body))
    lin_guard = conj(eq(a), neq(b))
    if not isinstance(lin_guard, FalseF):
        point = SamplePoint(PointKind.EXACT, LinRoot(-c, b), lin_guard)
        branches.append(_branch(var, point, others, ctx))
    if a.terms:
        disc = b * b - 4 * a * c
        quad_guard = conj(neq(a), leq(-disc))
        if not isinstance(quad_guard, FalseF):
            two_a = 2 * a
            roots = [
                _branch(var, SamplePoint(PointKind.EXACT, QuadRoot(-b, s, disc, two_a)), others, ctx)
                for s in (ONE, -ONE)
            ]
            branches.append(conj(quad_guard, disj_all(roots)))
    return disj_all(branches)


def elim_var_lucky(var: int, atoms: Sequence[Atom], ctx: Sequence[Formula], target: int) -> Formula:
    return elim_var_equality(var, atoms, ctx, target, lucky=True)


__all__ = [
    "DegreeError", "LinRoot", "QuadRoot", "Root", "PointKind", "SamplePoint", "NEG_INFINITY",
    "linear_substitution", "sqrt_case_split", "quadratic_sub", "substitute_root",
    "subst_neg_infinity", "subst_epsilon", "substitute_point", "substitute_formula",
    "atom_roots", "collect_roots", "elim_var", "retain_exists", "elim_var_equality",
    "elim_var_lucky",
]
