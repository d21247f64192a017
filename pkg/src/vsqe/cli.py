"""Command line front end.

Exit status: 0 when every answer is decided, 1 when some answer is unknown,
2 on errors (bad flags, unreadable or malformed input, or a negation check
that finds a formula and its negation decided the same way).
"""

from __future__ import annotations

import argparse
import io
import os
import sys
from pathlib import Path
from typing import Sequence

from vsqe import bench
from vsqe.engine import ALGORITHMS
from vsqe.native import NativeSyntaxError
from vsqe.smtlib import SmtLibError

DEFAULT_TIMEOUT = 30.0
EXIT_DECIDED, EXIT_UNKNOWN, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _default_timeout() -> float:
    raw = os.environ.get("VSQE_TIMEOUT")
    if raw:
        try:
            return float(raw)
        except ValueError:
            print(f"vsqe: ignoring malformed VSQE_TIMEOUT={raw!r}", file=sys.stderr)
    return DEFAULT_TIMEOUT


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="vsqe",
        description="Decide closed real-arithmetic problems by virtual substitution.",
    )
    p.add_argument("file", nargs="?", help="problem file (.smt2 or native .vsqe)")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="leg")
    p.add_argument("--format", choices=("smtlib", "native"), help="input format (default: by extension)")
    p.add_argument(
        "--timeout",
        type=float,
        default=None,
        help=f"seconds per problem (default {DEFAULT_TIMEOUT:g}, or $VSQE_TIMEOUT)",
    )
    p.add_argument("--rounds", type=int, help="override the number of passes")
    p.add_argument("--print-residual", action="store_true", help="print the residual formula when unknown")
    p.add_argument("--check-negation", action="store_true", help="also run the negated problem")
    p.add_argument("--bench", metavar="DIR", help="run every problem under DIR")
    p.add_argument("--csv", metavar="PATH", help="batch mode: write records as CSV ('-' for stdout)")
    p.add_argument("--json", metavar="PATH", help="batch mode: write records and summary as JSON ('-' for stdout)")
    p.add_argument("--jobs", type=int, default=1, help="batch mode: worker processes")
    return p


def _single(args) -> int:
    try:
        problem = bench.load_problem(args.file, args.format)
    except (OSError, SmtLibError, NativeSyntaxError, ValueError) as exc:
        print(f"vsqe: {args.file}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    record, result = bench.run_problem(problem, args.algorithm, args.timeout, args.rounds)
    print(record.answer)
    if record.answer == "unknown" and args.print_residual:
        print(result)
    if not args.check_negation:
        return EXIT_DECIDED if record.decided is not None else EXIT_UNKNOWN
    neg, neg_result = bench.run_problem(problem.negated(), args.algorithm, args.timeout, args.rounds)
    category = bench.classify(record.answer, neg.answer)
    print(f"negation: {neg.answer}")
    if neg.answer == "unknown" and args.print_residual:
        print(neg_result)
    print(f"check: {category}")
    if category == bench.CONTRADICTION:
        return EXIT_ERROR
    return EXIT_DECIDED if record.decided is not None else EXIT_UNKNOWN


def _emit(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _batch(args) -> int:
    root = Path(args.bench)
    if not root.is_dir():
        print(f"vsqe: {root}: not a directory", file=sys.stderr)
        return EXIT_ERROR
    files = bench.corpus_files(root)
    records = bench.run_corpus(
        files,
        algorithm=args.algorithm,
        timeout=args.timeout,
        rounds=args.rounds,
        fmt=args.format,
        check_negation=args.check_negation,
        jobs=max(1, args.jobs),
    )
    summary = bench.summarize(records)
    checks = bench.negation_report(records) if args.check_negation else []
    if checks:
        summary["negation"] = bench.negation_counts(checks)
    if args.csv:
        buf = io.StringIO()
        bench.write_csv(records, buf)
        _emit(args.csv, buf.getvalue())
    if args.json:
        _emit(args.json, bench.records_json(records, summary) + "\n")
    if not args.csv and not args.json:
        for r in records:
            print(f"{r.name}\t{r.answer}\t{r.ms:.1f}ms" + (f"\terror: {r.error}" if r.error else ""))
    for c in checks:
        if c.category == bench.CONTRADICTION:
            print(f"vsqe: contradiction on {c.name}: {c.original} / {c.negated}", file=sys.stderr)
    out = sys.stderr if args.csv == "-" or args.json == "-" else sys.stdout
    print(
        f"solved {summary['solved']}/{summary['problems']}, unknown {summary['unknown']}, "
        f"wrong {summary['wrong']}, errors {summary['errors']}",
        file=out,
    )
    if summary["errors"] or (checks and summary["negation"][bench.CONTRADICTION]):
        return EXIT_ERROR
    return EXIT_DECIDED if summary["unknown"] == 0 else EXIT_UNKNOWN


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.timeout is None:
        args.timeout = _default_timeout()
    if args.timeout <= 0:
        parser.error("--timeout must be positive")
    if args.rounds is not None and args.rounds < 1:
        parser.error("--rounds must be at least 1")
    if args.bench:
        if args.file:
            parser.error("give either a file or --bench DIR, not both")
        return _batch(args)
    if not args.file:
        parser.error("a problem file is required (or --bench DIR)")
    if args.csv or args.json:
        parser.error("--csv and --json need --bench")
    return _single(args)


def run_cli(argv: Sequence[str]) -> int:
    """Run the CLI and return the exit status instead of exiting."""
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
