from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from vsqe.formula import (
    FALSE,
    TRUE,
    AllQ,
    And,
    Atom,
    ExQ,
    Neg,
    Or,
    Rel,
    eval_qf,
    iter_atoms,
    nnf,
)
from vsqe.poly import ZERO, Polynomial
from vsqe.transform import (
    Disjunct,
    find_lucky,
    push_forall,
    reach_under,
    rejoin,
    simpfm,
    to_modified_dnf,
    unpower,
    unpower_formula,
)
from strategies import (
    eval_finite,
    qf_formulas,
    quantified_formulas,
    valuations,
)

x0, x1, x2 = (Polynomial.var(i) for i in range(3))
c = Polynomial.const
A = Atom(Rel.LESS, x0 - x1)
B = Atom(Rel.EQ, x0 * x0 - 2)


# -- simpfm ---------------------------------------------------------------------


def test_simpfm_folds_constant_atoms():
    assert simpfm(Atom(Rel.EQ, c(5))) == FALSE
    assert simpfm(Atom(Rel.LEQ, c(-1))) == TRUE
    assert simpfm(Atom(Rel.NEQ, ZERO)) == FALSE


def test_simpfm_connectives():
    assert simpfm(And(TRUE, A)) == A
    assert simpfm(Or(TRUE, A)) == TRUE
    assert simpfm(And(A, FALSE)) == FALSE
    assert simpfm(Or(FALSE, A)) == A
    assert simpfm(Neg(TRUE)) == FALSE
    assert simpfm(Neg(Neg(A))) == A
    assert simpfm(ExQ(And(Atom(Rel.EQ, c(0)), TRUE))) == TRUE
    assert simpfm(AllQ(Atom(Rel.LESS, c(1)))) == FALSE


def test_simpfm_decides_closed_formulas():
    f = Or(And(Atom(Rel.LESS, c(-3)), Atom(Rel.EQ, c(2))), Neg(Atom(Rel.LEQ, c(4))))
    assert simpfm(f) == TRUE


# -- unpower ---------------------------------------------------------------------


def test_unpower_examples():
    assert unpower(0, Atom(Rel.EQ, x0**3 + x0**2)) == Or(Atom(Rel.EQ, x0), Atom(Rel.EQ, x0 + 1))
    assert simpfm(unpower(0, Atom(Rel.LESS, -(x0**2)))) == Atom(Rel.NEQ, x0)
    at = Atom(Rel.LESS, x1)
    assert unpower(0, at) is at


def test_unpower_reduces_degree():
    # x^3 + x = x (x^2 + 1): every piece is at most quadratic
    out = unpower(0, Atom(Rel.EQ, x0**3 + x0))
    assert max(a.poly.degree_in(0) for a, _ in iter_atoms(out)) == 2


@pytest.mark.parametrize("rel", list(Rel))
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_unpower_rules_by_parity(rel, n):
    p = x1 * x0 - 3
    at = Atom(rel, p * x0**n)
    out = unpower(0, at)
    for xv in range(-3, 4):
        for yv in range(-3, 4):
            v = [Fraction(xv), Fraction(yv)]
            assert eval_qf(out, v) == eval_qf(at, v)


# -- push_forall ---------------------------------------------------------------------


def test_push_forall_splits_conjunctions():
    # exists x. forall y. (y^3 + x = 0 and x = 0)
    f = ExQ(AllQ(And(Atom(Rel.EQ, x0**3 + x1), Atom(Rel.EQ, x1))))
    assert push_forall(f) == ExQ(And(AllQ(Atom(Rel.EQ, x0**3 + x1)), Atom(Rel.EQ, x0)))


def test_push_forall_drops_vacuous_binders():
    assert push_forall(AllQ(TRUE)) == TRUE
    assert push_forall(AllQ(Atom(Rel.LESS, x1 - x2))) == Atom(Rel.LESS, x0 - x1)


def test_push_forall_moves_var_free_disjuncts():
    f = AllQ(Or(Atom(Rel.EQ, x1), Atom(Rel.EQ, x0)))
    assert push_forall(f) == Or(Atom(Rel.EQ, x0), AllQ(Atom(Rel.EQ, x0)))
    g = AllQ(Or(Atom(Rel.EQ, x0), Atom(Rel.EQ, x1)))
    assert push_forall(g) == Or(Atom(Rel.EQ, x0), AllQ(Atom(Rel.EQ, x0)))


def test_push_forall_leaves_existentials():
    f = ExQ(Or(Atom(Rel.EQ, x1), Atom(Rel.EQ, x0)))
    assert push_forall(f) == f


# -- modified DNF and reaching under -------------------------------------------------


def test_dnf_examples():
    assert to_modified_dnf(Or(A, B)) == [Disjunct(0, (A,)), Disjunct(0, (B,))]
    g = AllQ(Atom(Rel.LESS, x0 * x1))
    assert to_modified_dnf(And(A, g)) == [Disjunct(0, (A,), (g,))]
    assert to_modified_dnf(A) == [Disjunct(0, (A,))]
    assert to_modified_dnf(FALSE) == []
    assert to_modified_dnf(TRUE) == [Disjunct(0)]


def test_dnf_distributes():
    out = to_modified_dnf(And(Or(A, B), Or(A, TRUE)))
    assert [d.atoms for d in out] == [(A, A), (A,), (B, A), (B,)]


def test_dnf_rejects_negation():
    with pytest.raises(ValueError):
        to_modified_dnf(Neg(A))


def test_reach_under_hoists_existentials():
    # x = 0 and exists y. x*y^3 + y = 0, with x at index 0 outside the binder
    inner = ExQ(Atom(Rel.EQ, x1 * x0**3 + x0))
    d = Disjunct(0, (Atom(Rel.EQ, x0),), (inner,))
    (out,) = reach_under(d)
    assert out.n_pulled == 1
    assert out.var == 1
    assert out.atoms == (Atom(Rel.EQ, x1), Atom(Rel.EQ, x1 * x0**3 + x0))
    assert out.ctx == ()


def test_reach_under_keeps_universals():
    g = AllQ(Atom(Rel.EQ, x0 * x1))
    d = Disjunct(0, (A,), (g,))
    assert reach_under(d) == [d]
    assert reach_under(Disjunct(0, (A,))) == [Disjunct(0, (A,))]


def test_reach_under_splits_disjunctive_bodies():
    inner = ExQ(Or(Atom(Rel.EQ, x0), Atom(Rel.LESS, x1)))
    out = reach_under(Disjunct(0, (A,), (inner,)))
    assert [d.n_pulled for d in out] == [1, 1]
    assert len(out) == 2


# -- lucky atoms -------------------------------------------------------------------


def test_find_lucky_examples():
    assert find_lucky(0, [Atom(Rel.EQ, x0 * x0 * x1 + x0 + 1)]) == 0
    assert find_lucky(0, [Atom(Rel.LESS, x0)]) is None
    assert find_lucky(0, [Atom(Rel.EQ, x0 * x1)]) is None
    assert find_lucky(0, [Atom(Rel.EQ, x0**3 - 1), Atom(Rel.EQ, x0 * x1 - 2)]) == 1
    assert find_lucky(0, [A, Atom(Rel.EQ, 3 * x0 + x1)]) == 1


# -- properties ----------------------------------------------------------------------


@settings(max_examples=200)
@given(qf_formulas(), st.lists(valuations, min_size=10, max_size=10))
def test_passes_preserve_truth(f, vals):
    g = nnf(f)
    passes = [simpfm(f), g, push_forall(g)] + [unpower_formula(g, k) for k in range(3)]
    for v in vals:
        truth = eval_qf(f, v)
        assert all(eval_qf(h, v) == truth for h in passes)


@settings(max_examples=200)
@given(quantified_formulas(max_leaves=6), valuations)
def test_logical_passes_preserve_truth_with_quantifiers(f, v):
    g = nnf(f)
    truth = eval_finite(f, v)
    assert eval_finite(g, v) == truth
    assert eval_finite(push_forall(g), v) == truth
    assert eval_finite(simpfm(f), v) == truth


@settings(max_examples=200)
@given(quantified_formulas(max_leaves=6), valuations)
def test_dnf_rejoin_is_equivalent(f, v):
    body = nnf(f)
    disjuncts = [d2 for d in to_modified_dnf(body) for d2 in reach_under(d)]
    assert eval_finite(rejoin(disjuncts), v) == eval_finite(ExQ(body), v)


@given(qf_formulas(), st.integers(0, 3))
def test_unpower_leaves_no_common_power(f, var):
    for at, k in iter_atoms(unpower_formula(f, var)):
        p = at.poly
        x = var + k
        # the only atoms left with a factor x are the sign conditions on x itself
        assert p.min_degree_in(x) == 0 or set(p.terms) == {((x, 1),)}


@given(quantified_formulas())
def test_simpfm_idempotent(f):
    once = simpfm(f)
    assert simpfm(once) == once


@given(quantified_formulas())
def test_push_forall_is_a_fixpoint(f):
    g = push_forall(nnf(f))
    assert push_forall(g) == g
