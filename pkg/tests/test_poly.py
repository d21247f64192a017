from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from vsqe.poly import (
    ONE,
    ZERO,
    LoweringError,
    Polynomial,
    add,
    degree_in,
    derivative,
    insertion,
    isolate_coefficient,
    lift_poly,
    lower_poly,
    mul,
    nested_decompose,
    partial_insertion,
    power,
)
from strategies import polys, valuations

x0, x1, x2, x3 = (Polynomial.var(i) for i in range(4))
x, y = x0, x1
c = Polynomial.const


# -- arithmetic examples ---------------------------------------------------------


@pytest.mark.parametrize(
    "p, q, expected",
    [
        (x + 1, -x, c(1)),
        (ZERO, x * y + 3, x * y + 3),
        (x * x * y, x * x * y, 2 * x * x * y),
    ],
)
def test_add_examples(p, q, expected):
    assert add(p, q) == expected


@pytest.mark.parametrize(
    "p, q, expected",
    [
        (x + 1, x - 1, x * x - 1),
        (x * y + 2, ZERO, ZERO),
        (x * y + 2, ONE, x * y + 2),
    ],
)
def test_mul_examples(p, q, expected):
    assert mul(p, q) == expected


def test_power_examples():
    assert power(x + 1, 2) == x * x + 2 * x + 1
    assert power(x * y - 3, 0) == ONE
    assert power(ZERO, 3) == ZERO


def test_zero_coefficients_never_stored():
    p = (x + y) - (x + y)
    assert p.terms == {}
    q = Polynomial.from_terms([({0: 1}, 2), ({0: 1}, -2), ({1: 0}, 5)])
    assert q.terms == {(): Fraction(5)}


def test_degree_in():
    p = x * x * y + x
    assert degree_in(p, 0) == 2
    assert degree_in(p, 1) == 1
    assert degree_in(ZERO, 0) == 0


def test_isolate_coefficient():
    p = 3 * x * x * y + 2 * x + y
    assert isolate_coefficient(p, 0, 2) == 3 * y
    assert isolate_coefficient(p, 0, 0) == y
    assert isolate_coefficient(p, 0, 1) == c(2)
    assert isolate_coefficient(p, 0, 7) == ZERO
    assert isolate_coefficient(ZERO, 0, 1) == ZERO


def test_nested_decompose():
    assert nested_decompose(x * x * y + x + 1, 0) == [c(1), c(1), y]
    assert nested_decompose(ZERO, 0) == [ZERO]
    assert nested_decompose(y, 0) == [y]


def test_derivative():
    assert derivative(x * x + x * y + 3, 0) == 2 * x + y
    assert derivative(y * 7 + 2, 0) == ZERO
    assert derivative(x, 0) == ONE


def test_insertion():
    assert insertion([1, 2], x0 + x1 * x1) == 5
    assert insertion([], x3) == 0
    assert insertion([4, 5], c(7)) == 7
    assert insertion([Fraction(1, 2)], 4 * x * x) == 1


def test_partial_insertion():
    p = x0 * x0 * x1 + x1
    assert partial_insertion([99, 3], p, keep=0) == 3 * x0 * x0 + 3
    assert partial_insertion([1, 2, 3], x1 * x1 - x1, keep=1) == x1 * x1 - x1
    assert partial_insertion([0, 0], x0 * x1, keep=1) == ZERO


def test_lift_and_lower():
    assert lift_poly(1, 1, x0 * x1) == x0 * x2
    assert lift_poly(0, 2, x0 + x1) == x2 + x3
    assert lift_poly(3, 0, x0 + x1) == x0 + x1
    assert lower_poly(0, 1, x1 + x2 * x2) == x0 + x1 * x1
    assert lower_poly(2, 0, x2) == x2
    with pytest.raises(LoweringError):
        lower_poly(0, 1, x0)


def test_printing_uses_constructor_notation():
    p = 5 * x1 * x1 - x0
    assert str(p) == "Const 5 * (Var 1)^2 - Var 0"
    # graded lex: x0^2*x3 outranks x1*x2
    assert str(x1 * x2 - x0 * x0 * x3) == "-(Var 0)^2 * Var 3 + Var 1 * Var 2"
    assert str(ZERO) == "Const 0"
    assert str(c(Fraction(-1, 2))) == "-Const (1/2)"


def test_equality_with_numbers_and_hash():
    assert c(3) == 3
    assert ZERO == 0
    assert hash(x + y) == hash(y + x)
    assert len({x + y, y + x, x}) == 2


# -- properties --------------------------------------------------------------------


@given(polys, st.integers(0, 3))
def test_reconstruction(p, v):
    xv = Polynomial.var(v)
    total = ZERO
    for i, ci in enumerate(nested_decompose(p, v)):
        assert not ci.mentions(v)
        total = total + ci * xv ** i
    assert total == p


@given(polys, st.integers(0, 3), st.integers(0, 4))
def test_isolate_never_mentions_var(p, v, i):
    assert not isolate_coefficient(p, v, i).mentions(v)


@given(polys, polys, st.integers(0, 3))
def test_degree_bound_under_addition(p, q, v):
    d = max(degree_in(p, v), degree_in(q, v))
    assert degree_in(p + q, v) <= d


@given(polys, polys, st.integers(0, 3))
def test_degree_of_product(p, q, v):
    if not p.is_zero() and not q.is_zero():
        assert degree_in(p * q, v) == degree_in(p, v) + degree_in(q, v)


@given(polys, polys, valuations)
def test_insertion_is_a_ring_homomorphism(p, q, val):
    assert insertion(val, p + q) == insertion(val, p) + insertion(val, q)
    assert insertion(val, p * q) == insertion(val, p) * insertion(val, q)
    assert insertion(val, -p) == -insertion(val, p)


@given(polys, polys, st.integers(0, 3))
def test_derivative_linearity_and_leibniz(p, q, v):
    assert derivative(p + q, v) == derivative(p, v) + derivative(q, v)
    assert derivative(p * q, v) == derivative(p, v) * q + p * derivative(q, v)


@given(polys, st.integers(0, 4), st.integers(0, 3))
def test_lift_lower_round_trip(p, d, a):
    assert lower_poly(d, a, lift_poly(d, a, p)) == p


@given(polys, valuations, st.integers(0, 3))
def test_partial_insertion_agrees_with_insertion(p, val, keep):
    q = partial_insertion(val, p, keep)
    assert q.variables() <= {keep}
    assert insertion(val, q) == insertion(val, p)


@given(polys, polys)
def test_ring_axioms(p, q):
    assert p + q == q + p
    assert p * q == q * p
    assert p - p == ZERO
    assert (p + q) * (p - q) == p * p - q * q
