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
    QuantifiedFormulaError,
    Rel,
    UniAtom,
    aeval,
    count_quantifiers,
    eval_qf,
    free_variables,
    has_neg,
    lift_formula,
    lower_formula,
    mentions_var,
    nnf,
    size,
)
from vsqe.poly import LoweringError, Polynomial
from strategies import atoms, polys, qf_formulas, valuations

x0, x1, x2 = (Polynomial.var(i) for i in range(3))
c = Polynomial.const


def test_aeval_examples():
    assert aeval(Atom(Rel.LESS, x0 - 1), [0])
    assert aeval(Atom(Rel.EQ, c(0)), [5, 6])
    assert not aeval(Atom(Rel.NEQ, x0), [])
    assert aeval(Atom(Rel.LEQ, x0 * x0 - 4), [Fraction(-2)])


def test_eval_qf_examples():
    assert eval_qf(And(TRUE, Atom(Rel.LESS, x0)), [-1])
    assert not eval_qf(FALSE, [1, 2])
    assert not eval_qf(Neg(Atom(Rel.EQ, x0)), [0])
    assert eval_qf(Or(FALSE, Atom(Rel.NEQ, x1)), [0, 3])


def test_eval_qf_rejects_quantifiers():
    with pytest.raises(QuantifiedFormulaError):
        eval_qf(And(TRUE, ExQ(Atom(Rel.EQ, x0))), [])


def test_nnf_examples():
    p = x0 * x1 - 2
    assert nnf(Neg(Atom(Rel.LESS, p))) == Atom(Rel.LEQ, -p)
    assert nnf(Neg(Atom(Rel.LEQ, p))) == Atom(Rel.LESS, -p)
    assert nnf(Neg(Atom(Rel.EQ, p))) == Atom(Rel.NEQ, p)
    assert nnf(Neg(Atom(Rel.NEQ, p))) == Atom(Rel.EQ, p)
    a, b = Atom(Rel.EQ, x0), Atom(Rel.LESS, x1)
    assert nnf(Neg(And(a, b))) == Or(nnf(Neg(a)), nnf(Neg(b)))
    assert nnf(Neg(ExQ(a))) == AllQ(nnf(Neg(a)))
    assert nnf(Neg(AllQ(b))) == ExQ(nnf(Neg(b)))
    assert nnf(Neg(Neg(a))) == a


def test_lift_formula_examples():
    assert lift_formula(Atom(Rel.EQ, x0), 0, 1) == Atom(Rel.EQ, x1)
    assert lift_formula(ExQ(Atom(Rel.EQ, x0)), 0, 1) == ExQ(Atom(Rel.EQ, x0))
    assert lift_formula(ExQ(Atom(Rel.EQ, x0 + x1)), 0, 1) == ExQ(Atom(Rel.EQ, x0 + x2))
    f = And(Atom(Rel.LESS, x1), ExQ(Atom(Rel.EQ, x2)))
    assert lift_formula(f, 1, 0) is f


def test_lower_formula_rejects_live_variable():
    with pytest.raises(LoweringError):
        lower_formula(ExQ(Atom(Rel.EQ, x1)), 0, 1)


def test_mentions_var_examples():
    assert mentions_var(Atom(Rel.EQ, x0 * x2), 2)
    assert not mentions_var(TRUE, 0)
    assert mentions_var(ExQ(Atom(Rel.EQ, x1)), 0)
    assert not mentions_var(ExQ(Atom(Rel.EQ, x0)), 0)


def test_structure_helpers():
    f = AllQ(And(ExQ(Atom(Rel.EQ, x1 * x2)), Neg(Atom(Rel.LEQ, x0))))
    assert count_quantifiers(f) == 2
    assert free_variables(f) == frozenset({0})
    assert free_variables(ExQ(Atom(Rel.LESS, x0 + x2))) == frozenset({1})
    assert size(f) == 6
    assert has_neg(f)
    assert not has_neg(nnf(f))


def test_uni_atom_to_atom():
    u = UniAtom(Rel.LESS, Fraction(1), Fraction(0), Fraction(-2))
    assert u.to_atom() == Atom(Rel.LESS, x0 * x0 - 2)
    assert u.holds(1) and not u.holds(2)


def test_sample_formula_prints_in_constructor_notation():
    f = AllQ(
        And(
            ExQ(Atom(Rel.EQ, x1 * x2 - x0 * x0 * Polynomial.var(3))),
            Neg(AllQ(Atom(Rel.LEQ, 5 * x1 * x1 - x0))),
        )
    )
    assert str(f) == (
        "AllQ (And (ExQ (Atom (Eq (-(Var 0)^2 * Var 3 + Var 1 * Var 2)))) "
        "(Neg (AllQ (Atom (Leq (Const 5 * (Var 1)^2 - Var 0))))))"
    )


# -- properties --------------------------------------------------------------


@settings(max_examples=200)
@given(qf_formulas(), st.lists(valuations, min_size=20, max_size=20))
def test_nnf_preserves_truth(f, vals):
    g = nnf(f)
    assert not has_neg(g)
    for v in vals:
        assert eval_qf(g, v) == eval_qf(f, v)


@given(qf_formulas(), st.integers(0, 3), st.integers(0, 3))
def test_lift_lower_round_trip(f, d, a):
    assert lower_formula(lift_formula(f, d, a), d, a) == f


@given(qf_formulas(), valuations, st.integers(0, 3))
def test_lift_shifts_the_valuation(f, v, d):
    # inserting a dummy value at position d undoes the lift
    shifted = v[:d] + [Fraction(17)] + v[d:]
    assert eval_qf(lift_formula(f, d, 1), shifted) == eval_qf(f, v)


@given(polys, polys, valuations)
def test_normalized_equation_agrees_with_source(p, q, v):
    assert aeval(Atom(Rel.EQ, p - q), v) == (p.evaluate(v) == q.evaluate(v))
    assert aeval(Atom(Rel.LESS, q - p), v) == (p.evaluate(v) > q.evaluate(v))
    assert aeval(Atom(Rel.LEQ, q - p), v) == (p.evaluate(v) >= q.evaluate(v))


@given(atoms, valuations)
def test_atom_negation_is_complement(at, v):
    assert eval_qf(nnf(Neg(at)), v) == (not aeval(at, v))
