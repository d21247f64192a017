"""Batch runs over a directory of problems, with CSV/JSON output."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Sequence

from vsqe.engine import run
from vsqe.formula import size
from vsqe.native import parse_native
from vsqe.problem import Problem, RunRecord
from vsqe.smtlib import parse_smtlib

CSV_COLUMNS = ("name", "algorithm", "answer", "ms", "residual_nodes")
EXTENSIONS = {".smt2": "smtlib", ".smt": "smtlib", ".vsqe": "native", ".fm": "native"}


def detect_format(path: str | Path) -> str:
    return EXTENSIONS.get(Path(path).suffix.lower(), "smtlib")


def load_problem(path: str | Path, fmt: str | None = None) -> Problem:
    path = Path(path)
    fmt = fmt or detect_format(path)
    text = path.read_text()
    name = path.name
    if fmt == "native":
        return parse_native(text, name)
    if fmt == "smtlib":
        return parse_smtlib(text, name)
    raise ValueError(f"unknown format {fmt!r}")


def corpus_files(directory: str | Path) -> list[Path]:
    root = Path(directory)
    return sorted(p for p in root.rglob("*") if p.is_file() and p.suffix.lower() in EXTENSIONS)


def run_problem(
    problem: Problem,
    algorithm: str = "leg",
    timeout: float | None = 30.0,
    rounds: int | None = None,
) -> tuple[RunRecord, object]:
    """Run one problem; returns the record and the (possibly residual) formula."""
    deadline = None if timeout is None else time.monotonic() + timeout
    report = run(algorithm, problem.formula, deadline=deadline, rounds=rounds)
    residual = None if report.decided is not None else size(report.result)
    record = RunRecord(
        name=problem.name,
        algorithm=algorithm,
        answer=report.answer,
        ms=round(report.duration, 3),
        residual_nodes=residual,
        expected=problem.expected,
        timed_out=report.timed_out,
    )
    return record, report.result


@dataclass(frozen=True)
class _Job:
    path: str
    fmt: str | None
    algorithm: str
    timeout: float | None
    rounds: int | None
    negate: bool


def _run_job(job: _Job) -> list[RunRecord]:
    try:
        problem = load_problem(job.path, job.fmt)
    except (OSError, ValueError) as exc:
        name = Path(job.path).name
        return [RunRecord(name, job.algorithm, "unknown", 0.0, error=str(exc))]
    out = [run_problem(problem, job.algorithm, job.timeout, job.rounds)[0]]
    if job.negate:
        out.append(run_problem(problem.negated(), job.algorithm, job.timeout, job.rounds)[0])
    return out


def run_corpus(
    paths: Iterable[str | Path],
    algorithm: str = "leg",
    timeout: float | None = 30.0,
    rounds: int | None = None,
    fmt: str | None = None,
    check_negation: bool = False,
    jobs: int = 1,
) -> list[RunRecord]:
    """Run every file; records come back sorted by problem name."""
    work = [_Job(str(p), fmt, algorithm, timeout, rounds, check_negation) for p in paths]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_run_job, work))
    else:
        batches = [_run_job(j) for j in work]
    records = [r for batch in batches for r in batch]
    return sorted(records, key=lambda r: r.name)


# -- reporting ----------------------------------------------------------------


def write_csv(records: Sequence[RunRecord], out: io.TextIOBase) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([r.name, r.algorithm, r.answer, f"{r.ms:.3f}", "" if r.residual_nodes is None else r.residual_nodes])


def records_json(records: Sequence[RunRecord], summary: dict | None = None) -> str:
    payload = {"records": [asdict(r) for r in records]}
    if summary is not None:
        payload["summary"] = summary
    return json.dumps(payload, indent=2)


def cumulative_times(records: Sequence[RunRecord]) -> list[float]:
    """Cumulative ms to solve the fastest n decided problems, n = 1, 2, ..."""
    times = sorted(r.ms for r in records if r.decided is not None)
    out, total = [], 0.0
    for t in times:
        total += t
        out.append(round(total, 3))
    return out


def summarize(records: Sequence[RunRecord]) -> dict:
    return {
        "problems": len(records),
        "solved": sum(r.decided is not None for r in records),
        "unknown": sum(r.answer == "unknown" for r in records),
        "wrong": sum(r.wrong for r in records),
        "errors": sum(r.error is not None for r in records),
        "timeouts": sum(r.timed_out for r in records),
        "cumulative_ms": cumulative_times(records),
    }


# -- negation consistency ----------------------------------------------------------

AGREE = "agree"
ONLY_ORIGINAL = "only-original"
ONLY_NEGATED = "only-negated"
BOTH_UNKNOWN = "both-unknown"
CONTRADICTION = "contradiction"


@dataclass(frozen=True)
class NegationCheck:
    name: str
    original: str
    negated: str
    category: str


def classify(original: str, negated: str) -> str:
    """Compare the answers for a formula and its negation.

    Deciding both the same way (both sat or both unsat) is a contradiction.
    """
    o = original != "unknown"
    n = negated != "unknown"
    if o and n:
        return AGREE if original != negated else CONTRADICTION
    if o:
        return ONLY_ORIGINAL
    if n:
        return ONLY_NEGATED
    return BOTH_UNKNOWN


def negation_report(records: Sequence[RunRecord]) -> list[NegationCheck]:
    by_name = {r.name: r for r in records}
    out = []
    for name, rec in sorted(by_name.items()):
        if name.endswith("~neg"):
            continue
        neg = by_name.get(name + "~neg")
        if neg is None:
            continue
        out.append(NegationCheck(name, rec.answer, neg.answer, classify(rec.answer, neg.answer)))
    return out


def negation_counts(checks: Sequence[NegationCheck]) -> dict[str, int]:
    counts = {k: 0 for k in (AGREE, ONLY_ORIGINAL, ONLY_NEGATED, BOTH_UNKNOWN, CONTRADICTION)}
    for c in checks:
        counts[c.category] += 1
    return counts


__all__ = [
    "CSV_COLUMNS", "detect_format", "load_problem", "corpus_files", "run_problem", "run_corpus",
    "write_csv", "records_json", "cumulative_times", "summarize", "classify",
    "NegationCheck", "negation_report", "negation_counts",
]
