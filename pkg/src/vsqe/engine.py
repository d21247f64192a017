"""Quantifier elimination drivers built on the virtual substitution core.

:func:`qe_dnf` walks a formula innermost quantifier first.  At each ``ExQ``
it optimizes the body, splits it into modified-DNF disjuncts, hoists nested
existentials, and hands each disjunct to a *step* function.  A step returns
a formula without the eliminated variable, or ``None`` when it cannot make
progress, in which case the quantifier stays.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import Callable, Sequence

from vsqe.formula import (
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
    conj_all,
    count_quantifiers,
    disj_all,
    exists_n,
    is_quantifier_free,
    lower_formula,
    mentions_var,
    nnf,
)
from vsqe.transform import (
    Disjunct,
    find_lucky,
    push_forall,
    reach_under,
    simpfm,
    to_modified_dnf,
    unpower_formula,
)
from vsqe.vsub import (
    elim_var,
    elim_var_equality,
    elim_var_lucky,
    retain_exists,
)

StepFn = Callable[[int, Sequence[Atom], Sequence[Formula]], "Formula | None"]
OptFn = Callable[[Formula], Formula]

_RECURSION_LIMIT = 20000


class QeTimeout(Exception):
    """The cooperative deadline passed between elimination steps."""


@dataclass
class Stats:
    eliminated: int = 0
    retained: int = 0
    general_gated: int = 0

    def merge(self, other: Stats) -> None:
        self.eliminated += other.eliminated
        self.retained += other.retained
        self.general_gated += other.general_gated


@dataclass(frozen=True)
class QeReport:
    result: Formula
    decided: bool | None
    rounds: int
    duration: float  # milliseconds
    algorithm: str
    timed_out: bool = False
    eliminated: int = 0
    retained: int = 0
    general_gated: int = 0

    @property
    def answer(self) -> str:
        if self.decided is None:
            return "unknown"
        return "sat" if self.decided else "unsat"


def default_opt(body: Formula) -> Formula:
    """nnf, push_forall, unpower in the bound variable, constant folding."""
    body = push_forall(nnf(body))
    return simpfm(unpower_formula(body, 0))


def clear_quantifiers(f: Formula) -> Formula:
    """Drop binders whose variable is unused, lowering the indices beneath."""
    match f:
        case TrueF() | FalseF() | Atom():
            return f
        case And(l, r):
            return And(clear_quantifiers(l), clear_quantifiers(r))
        case Or(l, r):
            return Or(clear_quantifiers(l), clear_quantifiers(r))
        case Neg(g):
            return Neg(clear_quantifiers(g))
        case ExQ(g) | AllQ(g):
            g = clear_quantifiers(g)
            if not mentions_var(g, 0):
                return lower_formula(g, 0, 1)
            return type(f)(g)
    raise TypeError(f"not a formula: {f!r}")


class _Driver:
    def __init__(self, opt: OptFn, step: StepFn, deadline: float | None):
        self.opt = opt
        self.step = step
        self.deadline = deadline
        self.stats = Stats()

    def check(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise QeTimeout()

    def walk(self, f: Formula) -> Formula:
        match f:
            case TrueF() | FalseF() | Atom():
                return f
            case And(l, r):
                return And(self.walk(l), self.walk(r))
            case Or(l, r):
                return Or(self.walk(l), self.walk(r))
            case Neg(g):
                return Neg(self.walk(g))
            case ExQ(g):
                body = self.walk(g)
                return self.guarded(ExQ(body), self.eliminate(body))
            case AllQ(g):
                # forall x. F  ==  not exists x. not F
                body = self.walk(g)
                dual = nnf(Neg(self.eliminate(nnf(Neg(body)))))
                return self.guarded(AllQ(body), dual)
        raise TypeError(f"not a formula: {f!r}")

    def guarded(self, before: Formula, after: Formula) -> Formula:
        # never trade one quantifier for several copies
        if count_quantifiers(after) > count_quantifiers(before):
            return before
        return after

    def eliminate(self, body: Formula) -> Formula:
        """Equivalent of ``ExQ(body)`` with as few quantifiers as the step allows."""
        self.check()
        body = self.opt(body)
        if not mentions_var(body, 0):
            return lower_formula(body, 0, 1)
        parts = []
        for d0 in to_modified_dnf(body):
            for d in reach_under(d0):
                self.check()
                parts.append(self.eliminate_disjunct(d))
        return clear_quantifiers(simpfm(disj_all(parts)))

    def eliminate_disjunct(self, d: Disjunct) -> Formula:
        n = d.n_pulled
        var = n
        free = [a for a in d.atoms if not a.poly.mentions(var)]
        free += [g for g in d.ctx if not mentions_var(g, var)]
        atoms = [a for a in d.atoms if a.poly.mentions(var)]
        ctx = [g for g in d.ctx if mentions_var(g, var)]
        if not atoms and not ctx:
            inner = TRUE
        else:
            inner = self.step(var, atoms, ctx)
            if inner is None:
                self.stats.retained += 1
                inner = retain_exists(var, atoms, ctx)
            else:
                self.stats.eliminated += 1
                inner = simpfm(inner)
        body = conj_all(free + [inner])
        return exists_n(n, lower_formula(body, var, 1))


def qe_dnf(opt: OptFn, step: StepFn, f: Formula, deadline: float | None = None) -> Formula:
    """One innermost-first pass eliminating every quantifier ``step`` can handle."""
    out = _Driver(opt, step, deadline).walk(f)
    if is_quantifier_free(out):
        # a final opt cannot duplicate quantifiers here
        return simpfm(opt(out))
    return simpfm(out)


# -- step functions -----------------------------------------------------------


def _eligible_equation(var: int, atoms: Sequence[Atom]) -> int | None:
    for i, at in enumerate(atoms):
        if at.rel is Rel.EQ and 1 <= at.poly.degree_in(var) <= 2:
            return i
    return None


def lucky_step(var: int, atoms: Sequence[Atom], ctx: Sequence[Formula]) -> Formula | None:
    i = find_lucky(var, atoms)
    if i is None:
        return None
    return elim_var_lucky(var, atoms, ctx, i)


def equality_step(var: int, atoms: Sequence[Atom], ctx: Sequence[Formula]) -> Formula | None:
    i = find_lucky(var, atoms)
    if i is not None:
        return elim_var_lucky(var, atoms, ctx, i)
    i = _eligible_equation(var, atoms)
    if i is None:
        return None

    def rest(others, ctx_):
        # all coefficients of the chosen equation vanish: try the next one
        r = equality_step(var, others, ctx_)
        return r if r is not None else retain_exists(var, others, ctx_)

    return elim_var_equality(var, atoms, ctx, i, rest=rest)


class GeneralStep:
    """Lucky scan, then the general theorem when the conjunction is eligible.

    The general theorem takes its sample points from ``atoms`` alone, so it
    only fires when ``ctx`` does not mention the variable and every atom is at
    most quadratic in it.
    """

    def __init__(self):
        self.gated = 0

    def __call__(self, var: int, atoms: Sequence[Atom], ctx: Sequence[Formula]) -> Formula | None:
        i = find_lucky(var, atoms)
        if i is not None:
            return elim_var_lucky(var, atoms, ctx, i)
        if ctx:
            self.gated += 1
            return None
        if any(at.poly.degree_in(var) > 2 for at in atoms):
            return None
        return elim_var(var, atoms, ())


# -- top-level algorithms -------------------------------------------------------


ALGORITHMS = ("lucky", "equality", "equality3", "general", "general3", "leg")


def _schedule(name: str, rounds: int | None):
    if name == "lucky":
        return [lucky_step] * (rounds or 1)
    if name == "equality":
        return [equality_step] * (rounds or 1)
    if name == "equality3":
        return [equality_step] * (rounds or 3)
    if name == "general":
        return [GeneralStep()] * (rounds or 1)
    if name == "general3":
        return [GeneralStep()] * (rounds or 3)
    if name == "leg":
        return [lucky_step, equality_step, GeneralStep()] * (rounds or 1)
    raise ValueError(f"unknown algorithm {name!r}; expected one of {', '.join(ALGORITHMS)}")


def run(
    algorithm: str,
    f: Formula,
    deadline: float | None = None,
    rounds: int | None = None,
    opt: OptFn = default_opt,
) -> QeReport:
    """Run a named algorithm; ``deadline`` is a ``time.monotonic()`` instant.

    ``rounds`` overrides the number of passes (for ``leg``, the number of
    lucky/equality/general cycles).
    """
    steps = _schedule(algorithm, rounds)
    old_limit = sys.getrecursionlimit()
    if old_limit < _RECURSION_LIMIT:
        sys.setrecursionlimit(_RECURSION_LIMIT)
    start = time.perf_counter()
    stats = Stats()
    gated = 0
    current = simpfm(nnf(f))
    timed_out = False
    done = 0
    try:
        for step in steps:
            driver = _Driver(opt, step, deadline)
            try:
                current = clear_quantifiers(simpfm(driver.walk(current)))
            finally:
                stats.merge(driver.stats)
            if isinstance(step, GeneralStep):
                gated += step.gated
                step.gated = 0
            done += 1
    except QeTimeout:
        timed_out = True
    finally:
        if old_limit < _RECURSION_LIMIT:
            sys.setrecursionlimit(old_limit)
    elapsed = (time.perf_counter() - start) * 1000.0
    decided = None
    if isinstance(current, TrueF):
        decided = True
    elif isinstance(current, FalseF):
        decided = False
    return QeReport(
        result=current,
        decided=decided,
        rounds=done,
        duration=elapsed,
        algorithm=algorithm,
        timed_out=timed_out,
        eliminated=stats.eliminated,
        retained=stats.retained,
        general_gated=gated,
    )


def vs_lucky(f: Formula, deadline: float | None = None) -> QeReport:
    return run("lucky", f, deadline)


def vs_equality(f: Formula, deadline: float | None = None) -> QeReport:
    return run("equality", f, deadline)


def vs_equality_3(f: Formula, deadline: float | None = None) -> QeReport:
    return run("equality3", f, deadline)


def vs_general(f: Formula, deadline: float | None = None) -> QeReport:
    return run("general", f, deadline)


def vs_general_3(f: Formula, deadline: float | None = None) -> QeReport:
    return run("general3", f, deadline)


def vs_leg(f: Formula, deadline: float | None = None) -> QeReport:
    return run("leg", f, deadline)
