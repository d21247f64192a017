"""Truth-preserving formula passes used around each elimination step."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

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
    disjuncts,
    conjuncts,
    lift_formula,
    lower_formula,
    map_atoms,
    mentions_var,
)
from vsqe.poly import Polynomial


@dataclass(frozen=True)
class Disjunct:
    """``exists^n_pulled . exists x. (atoms and ctx)``, x at index ``n_pulled``."""

    n_pulled: int = 0
    atoms: tuple = ()
    ctx: tuple = ()

    @property
    def var(self) -> int:
        return self.n_pulled


# -- constant folding -------------------------------------------------------


def simpfm(f: Formula) -> Formula:
    """Fold constant atoms and Boolean units/absorbers bottom-up."""
    match f:
        case TrueF() | FalseF():
            return f
        case Atom():
            return atom(f.rel, f.poly)
        case And(l, r):
            return conj(simpfm(l), simpfm(r))
        case Or(l, r):
            return disj(simpfm(l), simpfm(r))
        case Neg(g):
            g = simpfm(g)
            if isinstance(g, TrueF):
                return FALSE
            if isinstance(g, FalseF):
                return TRUE
            if isinstance(g, Neg):
                return g.body
            return Neg(g)
        case ExQ(g) | AllQ(g):
            g = simpfm(g)
            if isinstance(g, (TrueF, FalseF)):
                return g
            return type(f)(g)
    raise TypeError(f"not a formula: {f!r}")


# -- unpower ----------------------------------------------------------------


def unpower(var: int, at: Atom) -> Formula:
    """Split off the largest power of ``var`` dividing every monomial of ``at``."""
    n = at.poly.min_degree_in(var)
    if n == 0:
        return at
    p = at.poly.divide_by_var_power(var, n)
    if n == 1 and p.is_constant():
        return at  # c*x ~ 0 is already as small as it gets
    x = Polynomial.var(var)
    even = n % 2 == 0
    match at.rel:
        case Rel.EQ:
            return disj(atom(Rel.EQ, x), atom(Rel.EQ, p))
        case Rel.NEQ:
            return conj(atom(Rel.NEQ, x), atom(Rel.NEQ, p))
        case Rel.LESS:
            if even:
                return conj(atom(Rel.LESS, p), atom(Rel.NEQ, x))
            return disj(
                conj(atom(Rel.LESS, p), atom(Rel.LESS, -x)),
                conj(atom(Rel.LESS, -p), atom(Rel.LESS, x)),
            )
        case Rel.LEQ:
            if even:
                return disj(atom(Rel.LEQ, p), atom(Rel.EQ, x))
            return disj(
                atom(Rel.EQ, p),
                conj(atom(Rel.LESS, p), atom(Rel.LEQ, -x)),
                conj(atom(Rel.LESS, -p), atom(Rel.LEQ, x)),
            )
    raise TypeError(at.rel)


def unpower_formula(f: Formula, var: int) -> Formula:
    """Apply :func:`unpower` to every atom, tracking ``var`` under binders."""
    return map_atoms(f, lambda at, k: unpower(var + k, at))


# -- push_forall ------------------------------------------------------------


def _push_all(body: Formula) -> Formula:
    """Push one ``AllQ`` binder over ``body`` (already pushed inside)."""
    if not mentions_var(body, 0):
        return lower_formula(body, 0, 1)
    if isinstance(body, And):
        return conj(*(_push_all(g) for g in conjuncts(body)))
    if isinstance(body, Or):
        parts = disjuncts(body)
        free = [g for g in parts if not mentions_var(g, 0)]
        if free:
            bound = [g for g in parts if mentions_var(g, 0)]
            outside = [lower_formula(g, 0, 1) for g in free]
            return disj(*outside, _push_all(disj_all(bound)))
    return AllQ(body)


def push_forall(f: Formula) -> Formula:
    """Drive universal quantifiers inward; repeats until nothing changes."""
    while True:
        g = _push_forall_once(f)
        if g == f:
            return g
        f = g


def _push_forall_once(f: Formula) -> Formula:
    match f:
        case TrueF() | FalseF() | Atom():
            return f
        case And(l, r):
            return And(_push_forall_once(l), _push_forall_once(r))
        case Or(l, r):
            return Or(_push_forall_once(l), _push_forall_once(r))
        case Neg(g):
            return Neg(_push_forall_once(g))
        case ExQ(g):
            return ExQ(_push_forall_once(g))
        case AllQ(g):
            return _push_all(_push_forall_once(g))
    raise TypeError(f"not a formula: {f!r}")


# -- modified DNF -----------------------------------------------------------


def _dnf(f: Formula) -> list[tuple[list, list]]:
    match f:
        case TrueF():
            return [([], [])]
        case FalseF():
            return []
        case Atom():
            return [([f], [])]
        case Or(l, r):
            return _dnf(l) + _dnf(r)
        case And(l, r):
            left = _dnf(l)
            if not left:
                return []
            right = _dnf(r)
            return [(a1 + a2, c1 + c2) for a1, c1 in left for a2, c2 in right]
        case ExQ() | AllQ():
            return [([], [f])]
        case Neg():
            raise ValueError("modified DNF expects negation normal form")
    raise TypeError(f"not a formula: {f!r}")


def to_modified_dnf(f: Formula) -> list[Disjunct]:
    """Disjunctive normal form treating quantified subformulas as atomic."""
    return [Disjunct(0, tuple(a), tuple(c)) for a, c in _dnf(f)]


def reach_under(d: Disjunct) -> list[Disjunct]:
    """Hoist existential quantifiers out of ``d.ctx`` in front of the disjunct.

    Returns several disjuncts when a hoisted body is itself a disjunction.
    """
    for i, g in enumerate(d.ctx):
        if isinstance(g, ExQ):
            break
    else:
        return [d]
    rest_ctx = tuple(lift_formula(h, 0, 1) for j, h in enumerate(d.ctx) if j != i)
    atoms = tuple(Atom(a.rel, a.poly.shift(0, 1)) for a in d.atoms)
    out = []
    for sub in to_modified_dnf(g.body):
        merged = Disjunct(d.n_pulled + 1, atoms + sub.atoms, rest_ctx + sub.ctx)
        out.extend(reach_under(merged))
    return out


def rejoin(disjuncts_: Sequence[Disjunct]) -> Formula:
    """The formula a list of disjuncts stands for (the exists over x included)."""
    parts = []
    for d in disjuncts_:
        body = conj_all(list(d.atoms) + list(d.ctx))
        # x sits at index n_pulled: bind it outermost, then the pulled ones
        parts.append(ExQ(_exists_n(d.n_pulled, body)))
    return disj_all(parts)


def _exists_n(n: int, f: Formula) -> Formula:
    for _ in range(n):
        f = ExQ(f)
    return f


# -- lucky atoms ------------------------------------------------------------


def find_lucky(var: int, atoms: Sequence[Atom]) -> int | None:
    """Index of the first equation whose polynomial is provably nonzero in ``var``.

    Lucky means degree at most two in ``var`` with a nonzero constant
    coefficient of ``var**0``, ``var**1`` or ``var**2``.
    """
    for i, at in enumerate(atoms):
        if at.rel is not Rel.EQ:
            continue
        cs = at.poly.coefficients(var)
        if len(cs) > 3:
            continue
        for c in cs:
            v = c.constant_value()
            if v is not None and v != 0:
                return i
    return None


__all__ = [
    "Disjunct", "simpfm", "unpower", "unpower_formula", "push_forall",
    "to_modified_dnf", "reach_under", "rejoin", "find_lucky",
]
