"""The native text format: formula constructors with infix polynomials.

Example::

    AllQ (And (ExQ (Atom (Eq (Var 1 * Var 2 - (Var 0)^2 * Var 3))))
              (Neg (AllQ (Atom (Leq (Const 5 * (Var 1)^2 - Var 0))))))

Grammar (whitespace-insensitive, ``;`` starts a line comment)::

    fm      := "(" fm ")" | "TrueF" | "FalseF" | "Atom" atom
             | ("And" | "Or") fm fm | ("Neg" | "ExQ" | "AllQ") fm
    atom    := "(" atom ")" | ("Less" | "Eq" | "Leq" | "Neq") "(" poly ")"
    poly    := term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := "-" factor | primary ("^" INT)?
    primary := "Var" INT | "Const" number | INT | "(" poly ")"
    number  := "-"? INT ("/" INT)? | "(" number ")"

A comment of the form ``; status: sat`` (or ``unsat``) records the expected
answer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from vsqe.formula import AllQ, And, Atom, ExQ, Formula, Neg, Or, Rel, FALSE, TRUE
from vsqe.poly import Polynomial

_TOKEN = re.compile(r"\s+|;[^\n]*|(?P<tok>\d+|[A-Za-z_][A-Za-z_0-9]*|[()+\-*^/])")
_STATUS = re.compile(r";\s*status\s*:\s*(sat|unsat|unknown)", re.IGNORECASE)
_RELS = {r.value: r for r in Rel}


class NativeSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise NativeSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        if m.group("tok"):
            toks.append(_Tok(m.group("tok"), line, pos - line_start + 1))
        chunk = m.group(0)
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i].text if self.i < len(self.toks) else None

    def error(self, msg: str) -> NativeSyntaxError:
        if self.i < len(self.toks):
            t = self.toks[self.i]
            return NativeSyntaxError(msg, t.line, t.col)
        last = self.toks[-1] if self.toks else _Tok("", 1, 0)
        return NativeSyntaxError(msg + " (at end of input)", last.line, last.col + len(last.text))

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            want = f"{expected!r}" if expected else "a token"
            raise self.error(f"expected {want}, found {tok!r}")
        self.i += 1
        return tok

    def integer(self) -> int:
        tok = self.peek()
        if tok is None or not tok.isdigit():
            raise self.error(f"expected an integer, found {tok!r}")
        self.i += 1
        return int(tok)

    # formulas
    def formula(self) -> Formula:
        tok = self.peek()
        if tok == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if tok == "TrueF":
            self.take()
            return TRUE
        if tok == "FalseF":
            self.take()
            return FALSE
        if tok == "Atom":
            self.take()
            return self.atom()
        if tok in ("And", "Or"):
            self.take()
            left = self.formula()
            right = self.formula()
            return And(left, right) if tok == "And" else Or(left, right)
        if tok in ("Neg", "ExQ", "AllQ"):
            self.take()
            body = self.formula()
            return {"Neg": Neg, "ExQ": ExQ, "AllQ": AllQ}[tok](body)
        raise self.error(f"expected a formula constructor, found {tok!r}")

    def atom(self) -> Atom:
        tok = self.peek()
        if tok == "(":
            self.take()
            a = self.atom()
            self.take(")")
            return a
        if tok not in _RELS:
            raise self.error(f"expected Less, Eq, Leq or Neq, found {tok!r}")
        self.take()
        self.take("(")
        p = self.poly()
        self.take(")")
        return Atom(_RELS[tok], p)

    # polynomials
    def poly(self) -> Polynomial:
        p = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek() == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        p = self.primary()
        if self.peek() == "^":
            self.take()
            p = p ** self.integer()
        return p

    def primary(self) -> Polynomial:
        tok = self.peek()
        if tok == "Var":
            self.take()
            return Polynomial.var(self.integer())
        if tok == "Const":
            self.take()
            return Polynomial.const(self.number())
        if tok == "(":
            self.take()
            p = self.poly()
            self.take(")")
            return p
        if tok is not None and tok.isdigit():
            return Polynomial.const(self.integer())
        raise self.error(f"expected Var, Const or '(', found {tok!r}")

    def number(self) -> Fraction:
        if self.peek() == "(":
            self.take()
            q = self.number()
            self.take(")")
            return q
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        n = self.integer()
        if self.peek() == "/":
            self.take()
            d = self.integer()
            if d == 0:
                raise self.error("zero denominator")
            return sign * Fraction(n, d)
        return Fraction(sign * n)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.peek() is not None:
        raise p.error(f"trailing input {p.peek()!r}")
    return f


def print_native(f: Formula) -> str:
    return str(f)


def parse_native(text: str, name: str = "<native>"):
    """Parse a native-format problem, existentially closing free variables."""
    from vsqe.formula import exists_n, free_variables
    from vsqe.problem import Problem

    f = parse_formula(text)
    free = free_variables(f)
    if free:
        f = exists_n(max(free) + 1, f)
    expected = None
    m = _STATUS.search(text)
    if m:
        expected = {"sat": True, "unsat": False}.get(m.group(1).lower())
    return Problem(name=name, formula=f, expected=expected, source_format="native")
