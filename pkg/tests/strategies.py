"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from vsqe.formula import FALSE, TRUE, AllQ, And, Atom, ExQ, FalseF, Neg, Or, Rel, TrueF, UniAtom
from vsqe.poly import Polynomial

NVARS = 4

rationals = st.builds(
    Fraction,
    st.integers(-10, 10),
    st.integers(1, 4),
)
nonzero_rationals = rationals.filter(bool)
rels = st.sampled_from(list(Rel))

monomials = st.dictionaries(st.integers(0, NVARS - 1), st.integers(1, 3), max_size=3)
polys = st.lists(st.tuples(monomials, rationals), max_size=5).map(Polynomial.from_terms)
valuations = st.lists(rationals, min_size=NVARS, max_size=NVARS)


@st.composite
def polys_in(draw, var=0, max_degree=2, others=(1, 2)):
    """A polynomial of degree at most ``max_degree`` in ``var``."""
    items = []
    for _ in range(draw(st.integers(0, 4))):
        mono = {var: draw(st.integers(0, max_degree))}
        for o in others:
            mono[o] = draw(st.integers(0, 1))
        items.append((mono, draw(rationals)))
    return Polynomial.from_terms(items)


atoms = st.builds(Atom, rels, polys)
uni_atoms = st.builds(UniAtom, rels, rationals, rationals, rationals)


def qf_formulas(atom_strategy=atoms, max_leaves=8):
    leaves = st.one_of(atom_strategy, atom_strategy, st.just(TRUE), st.just(FALSE))
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            st.builds(And, inner, inner),
            st.builds(Or, inner, inner),
            st.builds(Neg, inner),
        ),
        max_leaves=max_leaves,
    )


def quantified_formulas(atom_strategy=atoms, max_leaves=8):
    leaves = st.one_of(atom_strategy, atom_strategy, st.just(TRUE), st.just(FALSE))
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            st.builds(And, inner, inner),
            st.builds(Or, inner, inner),
            st.builds(Neg, inner),
            st.builds(ExQ, inner),
            st.builds(AllQ, inner),
        ),
        max_leaves=max_leaves,
    )


FINITE_DOMAIN = tuple(Fraction(k, 2) for k in range(-3, 4))


def eval_finite(f, v, domain=FINITE_DOMAIN):
    """Evaluate with quantifiers ranging over a finite domain.

    Purely logical rewrites (quantifier pushing, prenexing, negation
    normal form) preserve truth in every structure, so agreement here is a
    non-circular check on them.
    """
    match f:
        case TrueF():
            return True
        case FalseF():
            return False
        case Atom():
            return f.rel.holds(f.poly.evaluate(v))
        case And(l, r):
            return eval_finite(l, v, domain) and eval_finite(r, v, domain)
        case Or(l, r):
            return eval_finite(l, v, domain) or eval_finite(r, v, domain)
        case Neg(g):
            return not eval_finite(g, v, domain)
        case ExQ(g):
            return any(eval_finite(g, [d, *v], domain) for d in domain)
        case AllQ(g):
            return all(eval_finite(g, [d, *v], domain) for d in domain)
    raise TypeError(f)


def _dnf_uni(f):
    """DNF of a Neg-free formula over UniAtoms, as lists of conjunctions."""
    match f:
        case TrueF():
            return [[]]
        case FalseF():
            return []
        case UniAtom():
            return [[f]]
        case Or(l, r):
            return _dnf_uni(l) + _dnf_uni(r)
        case And(l, r):
            return [a + b for a in _dnf_uni(l) for b in _dnf_uni(r)]
    raise TypeError(f)


def exists_oracle(body, v):
    """Truth of ``exists x0. body`` at the valuation ``v`` of the free variables.

    ``body`` must be quantifier-free and at most quadratic in variable 0.
    Independent of the elimination code: plug in ``v``, split into
    univariate conjunctions, decide each by the sign-table oracle.
    """
    from vsqe.formula import map_atoms, nnf
    from vsqe.oracle import decide_closed_conjunction
    from vsqe.poly import partial_insertion

    def to_uni(at, depth):
        p = partial_insertion([Fraction(0), *v], at.poly, keep=0)
        if p.degree_in(0) > 2:
            raise ValueError("degree above two")
        a, b, c = (p.coefficient(0, i).constant_value() for i in (2, 1, 0))
        return UniAtom(at.rel, a, b, c)

    uni = map_atoms(nnf(body), to_uni)
    return any(decide_closed_conjunction(conj) for conj in _dnf_uni(uni))
