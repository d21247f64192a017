"""A small SMT-LIB 2 reader for (nonlinear) real arithmetic problems.

Supported: ``set-logic``, ``set-info`` (``:status`` is kept), ``set-option``,
``declare-const`` and 0-ary ``declare-fun`` of sort ``Real``, ``assert``,
``check-sat`` and ``exit``.  Terms use ``+ - *``, integer and decimal
literals; formulas use ``and or not => = distinct < <= > >=``, ``true``,
``false`` and ``forall``/``exists`` over ``Real``.  Powers and division are
rejected: expand powers into products and clear denominators first.

Declared constants are closed existentially in declaration order, the first
declaration outermost.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from vsqe.formula import (
    FALSE,
    TRUE,
    AllQ,
    And,
    Atom,
    ExQ,
    Formula,
    Neg,
    Or,
    Rel,
)
from vsqe.poly import Polynomial
from vsqe.problem import Problem

_ACCEPTED_LOGICS = {"NRA", "QF_NRA", "LRA", "QF_LRA", "ALL"}


class SmtLibError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Sym:
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class SList:
    items: tuple
    line: int
    col: int


SExp = Union[Sym, SList]

_LEX = re.compile(
    r"""(?P<ws>\s+)|(?P<comment>;[^\n]*)|(?P<open>\()|(?P<close>\))
      |(?P<string>"(?:[^"]|"")*")|(?P<quoted>\|[^|]*\|)
      |(?P<atom>[^\s()";|]+)""",
    re.VERBOSE,
)


def read_sexps(text: str) -> list[SExp]:
    stack: list[tuple[list, int, int]] = [([], 0, 0)]
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _LEX.match(text, pos)
        if m is None:
            raise SmtLibError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        col = pos - line_start + 1
        kind = m.lastgroup
        if kind == "open":
            stack.append(([], line, col))
        elif kind == "close":
            if len(stack) == 1:
                raise SmtLibError("unbalanced ')'", line, col)
            items, l0, c0 = stack.pop()
            stack[-1][0].append(SList(tuple(items), l0, c0))
        elif kind in ("atom", "string", "quoted"):
            tok = m.group(0)
            if kind == "quoted":
                tok = tok[1:-1]
            stack[-1][0].append(Sym(tok, line, col))
        chunk = m.group(0)
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    if len(stack) != 1:
        _, l0, c0 = stack[-1]
        raise SmtLibError("unclosed '('", l0, c0)
    return stack[0][0]


def _err(node: SExp, msg: str) -> SmtLibError:
    return SmtLibError(msg, node.line, node.col)


def _head(node: SExp) -> str | None:
    if isinstance(node, SList) and node.items and isinstance(node.items[0], Sym):
        return node.items[0].text
    return None


_NUMERAL = re.compile(r"\d+")
_DECIMAL = re.compile(r"\d+\.\d+")


class _Translator:
    def __init__(self, consts: list[str]):
        self.consts = consts
        self.env: list[str] = []  # bound variables, innermost last

    def index_of(self, node: Sym) -> int:
        name = node.text
        for k in range(len(self.env) - 1, -1, -1):
            if self.env[k] == name:
                return len(self.env) - 1 - k
        depth = len(self.env)
        n = len(self.consts)
        for k in range(n - 1, -1, -1):
            if self.consts[k] == name:
                return depth + (n - 1 - k)
        raise _err(node, f"unknown symbol {name!r}")

    # terms
    def term(self, node: SExp) -> Polynomial:
        if isinstance(node, Sym):
            t = node.text
            if _NUMERAL.fullmatch(t):
                return Polynomial.const(int(t))
            if _DECIMAL.fullmatch(t):
                return Polynomial.const(Fraction(t))
            if t in ("true", "false"):
                raise _err(node, f"expected a Real term, found {t!r}")
            return Polynomial.var(self.index_of(node))
        head = _head(node)
        args = node.items[1:]
        if head == "+":
            out = Polynomial.const(0)
            for a in args:
                out = out + self.term(a)
            return out
        if head == "-":
            if not args:
                raise _err(node, "'-' needs an argument")
            first = self.term(args[0])
            if len(args) == 1:
                return -first
            for a in args[1:]:
                first = first - self.term(a)
            return first
        if head == "*":
            out = Polynomial.const(1)
            for a in args:
                out = out * self.term(a)
            return out
        if head in ("^", "pow", "**"):
            raise _err(node, "power operators are not supported; expand powers into products")
        if head in ("/", "div", "mod"):
            raise _err(node, "division is not supported; rewrite the problem without it")
        if head is None:
            raise _err(node, "malformed term")
        raise _err(node, f"unsupported term operator {head!r}")

    # formulas
    def formula(self, node: SExp) -> Formula:
        if isinstance(node, Sym):
            if node.text == "true":
                return TRUE
            if node.text == "false":
                return FALSE
            raise _err(node, f"expected a formula, found {node.text!r}")
        head = _head(node)
        args = node.items[1:]
        if head == "and":
            return self._fold(And, [self.formula(a) for a in args], TRUE)
        if head == "or":
            return self._fold(Or, [self.formula(a) for a in args], FALSE)
        if head == "not":
            if len(args) != 1:
                raise _err(node, "'not' takes one argument")
            return Neg(self.formula(args[0]))
        if head == "=>":
            if len(args) < 2:
                raise _err(node, "'=>' takes at least two arguments")
            fs = [self.formula(a) for a in args]
            out = fs[-1]
            for f in reversed(fs[:-1]):
                out = Or(Neg(f), out)
            return out
        if head in ("<", "<=", ">", ">=", "="):
            return self._chain(node, head, args)
        if head == "distinct":
            terms = [self.term(a) for a in args]
            parts = [
                Atom(Rel.NEQ, terms[i] - terms[j])
                for i in range(len(terms))
                for j in range(i + 1, len(terms))
            ]
            return self._fold(And, parts, TRUE)
        if head in ("forall", "exists"):
            return self._binder(node, head, args)
        if head in ("let", "!", "ite"):
            raise _err(node, f"{head!r} is not supported")
        if head is None:
            raise _err(node, "malformed formula")
        raise _err(node, f"unsupported formula operator {head!r}")

    @staticmethod
    def _fold(ctor, parts: list[Formula], unit: Formula) -> Formula:
        if not parts:
            return unit
        out = parts[0]
        for p in parts[1:]:
            out = ctor(out, p)
        return out

    def _chain(self, node: SList, op: str, args) -> Formula:
        if len(args) < 2:
            raise _err(node, f"{op!r} takes at least two arguments")
        for a in args:
            if isinstance(a, Sym) and a.text in ("true", "false") or _head(a) in (
                "and", "or", "not", "=>", "<", "<=", ">", ">=", "=", "forall", "exists",
            ):
                raise _err(a, f"{op!r} over Booleans is not supported")
        terms = [self.term(a) for a in args]
        parts = []
        for lhs, rhs in zip(terms, terms[1:]):
            if op == "<":
                parts.append(Atom(Rel.LESS, lhs - rhs))
            elif op == "<=":
                parts.append(Atom(Rel.LEQ, lhs - rhs))
            elif op == ">":
                parts.append(Atom(Rel.LESS, rhs - lhs))
            elif op == ">=":
                parts.append(Atom(Rel.LEQ, rhs - lhs))
            else:
                parts.append(Atom(Rel.EQ, lhs - rhs))
        return self._fold(And, parts, TRUE)

    def _binder(self, node: SList, head: str, args) -> Formula:
        if len(args) != 2 or not isinstance(args[0], SList) or not args[0].items:
            raise _err(node, f"malformed {head!r}")
        names = []
        for b in args[0].items:
            if not (isinstance(b, SList) and len(b.items) == 2 and all(isinstance(x, Sym) for x in b.items)):
                raise _err(b, "expected a (name Sort) binding")
            name, sort = b.items
            if sort.text != "Real":
                raise _err(sort, f"only sort Real is supported, found {sort.text!r}")
            names.append(name.text)
        self.env.extend(names)
        try:
            body = self.formula(args[1])
        finally:
            del self.env[len(self.env) - len(names):]
        ctor = ExQ if head == "exists" else AllQ
        for _ in names:
            body = ctor(body)
        return body


def parse_smtlib(text: str, name: str = "<smtlib>") -> Problem:
    """Read a script into a closed :class:`Problem`."""
    consts: list[str] = []
    assertions: list[SExp] = []
    expected = None
    for cmd in read_sexps(text):
        head = _head(cmd)
        if head is None:
            raise _err(cmd, "expected a command")
        args = cmd.items[1:]
        if head == "set-logic":
            logic = args[0].text if args and isinstance(args[0], Sym) else "?"
            if logic not in _ACCEPTED_LOGICS:
                raise _err(cmd, f"unsupported logic {logic!r}")
        elif head == "set-info":
            if len(args) >= 2 and isinstance(args[0], Sym) and args[0].text == ":status":
                status = args[1].text if isinstance(args[1], Sym) else ""
                expected = {"sat": True, "unsat": False}.get(status)
        elif head in ("set-option", "exit"):
            pass
        elif head in ("declare-const", "declare-fun"):
            if head == "declare-const":
                if len(args) != 2:
                    raise _err(cmd, "declare-const takes a name and a sort")
                sym, sort = args
            else:
                if len(args) != 3 or not isinstance(args[1], SList):
                    raise _err(cmd, "declare-fun takes a name, a parameter list and a sort")
                if args[1].items:
                    raise _err(cmd, "only 0-ary declare-fun is supported")
                sym, sort = args[0], args[2]
            if not isinstance(sort, Sym) or sort.text != "Real":
                shown = sort.text if isinstance(sort, Sym) else "(...)"
                raise _err(sort, f"only sort Real is supported, found {shown!r}")
            if not isinstance(sym, Sym):
                raise _err(cmd, "expected a symbol")
            consts.append(sym.text)
        elif head == "assert":
            if len(args) != 1:
                raise _err(cmd, "assert takes one formula")
            assertions.append(args[0])
        elif head == "check-sat":
            pass
        else:
            raise _err(cmd, f"unsupported command {head!r}")
    tr = _Translator(consts)
    parts = [tr.formula(a) for a in assertions]
    body = _Translator._fold(And, parts, TRUE)
    for _ in consts:
        body = ExQ(body)
    return Problem(name=name, formula=body, expected=expected, source_format="smtlib")
