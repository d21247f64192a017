from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from vsqe.formula import Formula, Neg


@dataclass(frozen=True)
class Problem:
    """A closed decision problem."""

    name: str
    formula: Formula
    expected: bool | None = None
    source_format: Literal["smtlib", "native"] = "smtlib"

    def negated(self) -> Problem:
        expected = None if self.expected is None else not self.expected
        return Problem(f"{self.name}~neg", Neg(self.formula), expected, self.source_format)


@dataclass(frozen=True)
class RunRecord:
    name: str
    algorithm: str
    answer: Literal["sat", "unsat", "unknown"]
    ms: float
    residual_nodes: int | None = None
    expected: bool | None = None
    timed_out: bool = False
    error: str | None = None

    @property
    def decided(self) -> bool | None:
        return {"sat": True, "unsat": False}.get(self.answer)

    @property
    def wrong(self) -> bool:
        return self.expected is not None and self.decided is not None and self.decided != self.expected
