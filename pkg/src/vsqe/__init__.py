"""Quantifier elimination for real arithmetic by linear and quadratic virtual substitution."""

from vsqe.engine import (
    ALGORITHMS,
    QeReport,
    QeTimeout,
    qe_dnf,
    run,
    vs_equality,
    vs_equality_3,
    vs_general,
    vs_general_3,
    vs_leg,
    vs_lucky,
)
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
    UniAtom,
    eval_qf,
)
from vsqe.kernel import BACKEND
from vsqe.native import parse_native, print_native
from vsqe.poly import Polynomial
from vsqe.problem import Problem, RunRecord
from vsqe.smtlib import parse_smtlib

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS", "BACKEND", "QeReport", "QeTimeout", "qe_dnf", "run",
    "vs_lucky", "vs_equality", "vs_equality_3", "vs_general", "vs_general_3", "vs_leg",
    "Formula", "TrueF", "FalseF", "TRUE", "FALSE", "Atom", "UniAtom", "And", "Or", "Neg",
    "ExQ", "AllQ", "Rel", "eval_qf", "Polynomial", "Problem", "RunRecord",
    "parse_smtlib", "parse_native", "print_native",
]
