"""Ground truth for univariate quadratic sign problems.

Exact arithmetic in ``Q(sqrt c)``: numbers ``(a + b*sqrt(c)) / d`` with
rational parts.  Nothing here touches the substitution code, so checks
against it are not circular.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import isqrt
from typing import Iterable, Sequence

from vsqe.formula import UniAtom

Poly = tuple  # (a, b, c) coefficients of a*x^2 + b*x + c


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, m = q.numerator, q.denominator
    rn, rm = isqrt(n), isqrt(m)
    if rn * rn == n and rm * rm == m:
        return Fraction(rn, rm)
    return None


def sign_sqrt_expr(A, B, c) -> int:
    """Sign of ``A + B*sqrt(c)`` for rationals with ``c >= 0``."""
    sa = _sign(A)
    if B == 0 or c == 0:
        return sa
    sb = _sign(B)
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare magnitudes by squaring
    return sa * _sign(A * A - B * B * c)


class QuadNum:
    """An exact real ``(a + b*sqrt(c)) / d``, normalized to ``d > 0``."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b=0, c=0, d=1):
        a, b, c, d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
        if c < 0:
            raise ValueError("radicand must be nonnegative")
        if d == 0:
            raise ValueError("denominator must be nonzero")
        if b == 0 or c == 0:
            b, c = Fraction(0), Fraction(0)
        else:
            r = _rational_sqrt(c)
            if r is not None:
                a, b, c = a + b * r, Fraction(0), Fraction(0)
        if d < 0:
            a, b, d = -a, -b, -d
        # fold d into the rational parts
        self.a = a / d
        self.b = b / d
        self.c = c
        self.d = Fraction(1)

    @classmethod
    def rational(cls, q) -> QuadNum:
        return cls(q)

    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        return sign_sqrt_expr(self.a, self.b, self.c)

    def __neg__(self) -> QuadNum:
        return QuadNum(-self.a, -self.b, self.c)

    def add_rational(self, q) -> QuadNum:
        return QuadNum(self.a + Fraction(q), self.b, self.c)

    def interval(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rationals ``lo <= self <= hi`` with ``hi - lo <= |b| * 2**-bits``."""
        if self.b == 0:
            return self.a, self.a
        n, m = self.c.numerator, self.c.denominator
        scale = 1 << bits
        root = isqrt(n * m * scale * scale)
        lo = Fraction(root, m * scale)
        hi = Fraction(root + 1, m * scale)
        if self.b > 0:
            return self.a + self.b * lo, self.a + self.b * hi
        return self.a + self.b * hi, self.a + self.b * lo

    def __float__(self) -> float:
        lo, hi = self.interval(60)
        return float((lo + hi) / 2)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadNum):
            other = QuadNum(other)
        return quad_compare(self, other) == 0

    def __lt__(self, other) -> bool:
        if not isinstance(other, QuadNum):
            other = QuadNum(other)
        return quad_compare(self, other) < 0

    def __le__(self, other) -> bool:
        return not other < self if isinstance(other, QuadNum) else not QuadNum(other) < self

    def __gt__(self, other) -> bool:
        if not isinstance(other, QuadNum):
            other = QuadNum(other)
        return quad_compare(self, other) > 0

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadNum({self.a})"
        return f"QuadNum({self.a} + {self.b}*sqrt({self.c}))"


def quad_compare(x: QuadNum, y: QuadNum) -> int:
    """Exact three-way comparison, returning -1, 0 or 1."""
    # x - y = alpha + beta*sqrt(c1) + gamma*sqrt(c2)
    alpha = x.a - y.a
    if x.b == 0 or y.b == 0 or x.c == y.c:
        if x.b == 0:
            return sign_sqrt_expr(alpha, -y.b, y.c)
        if y.b == 0 or x.c == y.c:
            return sign_sqrt_expr(alpha, x.b - y.b, x.c)
    # two distinct radicands: u = alpha + x.b*sqrt(x.c), v = -y.b*sqrt(y.c)
    su = sign_sqrt_expr(alpha, x.b, x.c)
    sv = -_sign(y.b)
    if su == 0:
        return sv
    if su == sv:
        return su
    # compare u^2 with v^2 = y.b^2 * y.c
    u2_a = alpha * alpha + x.b * x.b * x.c - y.b * y.b * y.c
    u2_b = 2 * alpha * x.b
    s = sign_sqrt_expr(u2_a, u2_b, x.c)
    if s > 0:
        return su
    if s < 0:
        return sv
    return 0


def quad_roots(a, b, c) -> list[QuadNum]:
    """Distinct real roots of ``a*x^2 + b*x + c``, ascending; [] for the zero polynomial."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == 0:
        if b == 0:
            return []
        return [QuadNum(-c / b)]
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    if disc == 0:
        return [QuadNum(-b / (2 * a))]
    r1 = QuadNum(-b, 1, disc, 2 * a)
    r2 = QuadNum(-b, -1, disc, 2 * a)
    return sorted([r1, r2], key=cmp_to_key(quad_compare))


def sign_at(a, b, c, x: QuadNum) -> int:
    """Sign of ``a*x^2 + b*x + c`` at the exact point ``x``."""
    p, q, s = x.a, x.b, x.c
    # x^2 = p^2 + q^2 s + 2pq sqrt(s)
    A = a * (p * p + q * q * s) + b * p + c
    B = 2 * a * p * q + b * q
    return sign_sqrt_expr(A, B, s)


def atom_holds_at(at: UniAtom, x: QuadNum) -> bool:
    s = sign_at(at.a, at.b, at.c, x)
    return at.rel.holds(s)


def rational_between(x: QuadNum, y: QuadNum) -> Fraction:
    """A rational strictly between ``x < y``."""
    if quad_compare(x, y) >= 0:
        raise ValueError("need x < y")
    bits = 16
    while True:
        _, xh = x.interval(bits)
        yl, _ = y.interval(bits)
        if xh < yl:
            m = (xh + yl) / 2
            if QuadNum(m) > x and QuadNum(m) < y:
                return m
        bits *= 2


def cauchy_bound(coeffs: Sequence) -> Fraction:
    """``1 + max|c_i| / |lead|``: every real root has absolute value below it."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[0] == 0:
        cs.pop(0)
    if len(cs) <= 1:
        return Fraction(1)
    lead = abs(cs[0])
    return 1 + max(abs(c) for c in cs[1:]) / lead


def below_all_roots(polys: Iterable[Sequence]) -> Fraction:
    """A rational strictly below every real root of every polynomial.

    Each polynomial is a coefficient sequence, highest degree first.
    """
    bound = Fraction(1)
    for p in polys:
        if all(Fraction(c) == 0 for c in p):
            raise ValueError("zero polynomial has no Cauchy bound")
        bound = max(bound, cauchy_bound(p))
    return -bound - 1


def _atom_points(atoms: Sequence[UniAtom]) -> list[QuadNum]:
    roots: list[QuadNum] = []
    for at in atoms:
        roots.extend(quad_roots(at.a, at.b, at.c))
    roots.sort(key=cmp_to_key(quad_compare))
    distinct: list[QuadNum] = []
    for r in roots:
        if not distinct or quad_compare(distinct[-1], r) != 0:
            distinct.append(r)
    return distinct


def sample_points(atoms: Sequence[UniAtom]) -> list[QuadNum]:
    """Every root plus one rational in each open interval between and beyond them."""
    roots = _atom_points(atoms)
    if not roots:
        return [QuadNum(0)]
    lo, _ = roots[0].interval(8)
    _, hi = roots[-1].interval(8)
    pts = [QuadNum(lo - 1)]
    for i, r in enumerate(roots):
        pts.append(r)
        if i + 1 < len(roots):
            pts.append(QuadNum(rational_between(r, roots[i + 1])))
    pts.append(QuadNum(hi + 1))
    return pts


def decide_closed_conjunction(atoms: Sequence[UniAtom]) -> bool:
    """Whether some real ``x`` satisfies every atom (degree at most 2)."""
    for p in sample_points(atoms):
        if all(atom_holds_at(at, p) for at in atoms):
            return True
    return False


def epsilon_witness(r: QuadNum, polys: Iterable[Sequence], bits: int = 20) -> Fraction:
    """A rational ``delta > 0`` with no root of any polynomial in ``(r, r + delta]``.

    Polynomials are ``(a, b, c)`` triples.  ``delta`` is half the distance to
    the nearest root above ``r`` (1 if there is none), rounded down to a
    rational when that distance is irrational.
    """
    above = [
        root
        for a, b, c in polys
        for root in quad_roots(a, b, c)
        if quad_compare(root, r) > 0
    ]
    if not above:
        return Fraction(1)
    nearest = min(above, key=cmp_to_key(quad_compare))
    # gap = nearest - r; rational when both share a radicand or are rational
    if nearest.b == 0 and r.b == 0:
        return (nearest.a - r.a) / 2
    if r.b == 0 or nearest.b == 0 or nearest.c == r.c:
        c = nearest.c if nearest.b != 0 else r.c
        gap = QuadNum(nearest.a - r.a, nearest.b - r.b, c)
        if gap.b == 0:
            return gap.a / 2
        k = bits
        while True:
            lo, _ = gap.interval(k)
            if lo > 0:
                return lo / 2
            k *= 2
    k = bits
    while True:
        lo, _ = nearest.interval(k)
        _, hi = r.interval(k)
        if lo > hi:
            return (lo - hi) / 2
        k *= 2


def naive_decide(atoms: Sequence[UniAtom], grid: int = 4, span: int = 40) -> bool:
    """Secondary oracle: every exact root plus a dense rational grid."""
    pts = list(_atom_points(atoms))
    step = Fraction(1, grid)
    k = -span * grid
    while k <= span * grid:
        pts.append(QuadNum(k * step))
        k += 1
    for r in _atom_points(atoms):
        lo, hi = r.interval(30)
        for q in (lo - Fraction(1, 1 << 20), hi + Fraction(1, 1 << 20)):
            pts.append(QuadNum(q))
    return any(all(atom_holds_at(at, p) for at in atoms) for p in pts)


__all__ = [
    "QuadNum", "quad_compare", "quad_roots", "sign_at", "sign_sqrt_expr", "atom_holds_at",
    "rational_between", "cauchy_bound", "below_all_roots", "sample_points",
    "decide_closed_conjunction", "epsilon_witness", "naive_decide",
]
