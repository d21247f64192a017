"""Compare the compiled kernel with the pure-Python fallback.

Two measurements:

* kernel: the raw term operations on random polynomials, both backends
  imported side by side;
* end to end: the bundled corpus under ``leg``, once per backend in a fresh
  interpreter (the backend is fixed at import time).

    python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from vsqe import _pykernel
from vsqe.poly import Polynomial

try:
    from vsqe import _ckernel
except ImportError:
    _ckernel = None

CORPUS_RUN = """
import time
from pathlib import Path
import vsqe
from vsqe.bench import corpus_files, run_corpus
files = corpus_files(Path(vsqe.__file__).parent / "corpus")
times = []
for _ in range({repeat}):
    t0 = time.perf_counter()
    run_corpus(files, check_negation=True)
    times.append(time.perf_counter() - t0)
print(vsqe.BACKEND, min(times))
"""


def random_poly(rng: random.Random, terms: int = 12) -> Polynomial:
    items = []
    for _ in range(terms):
        mono = {v: rng.randint(1, 4) for v in rng.sample(range(5), rng.randint(0, 4))}
        items.append((mono, Fraction(rng.randint(-50, 50), rng.randint(1, 9))))
    return Polynomial.from_terms(items)


def kernel_workload(k, pairs, values):
    for p, q in pairs:
        r = k.mul_terms(p, q)
        k.add_terms(r, p)
        k.eval_terms(r, values)
        k.decompose_terms(r, 0)
        k.derivative_terms(r, 1)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = random.Random(0)
    pairs = [(random_poly(rng).terms, random_poly(rng).terms) for _ in range(200)]
    values = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(5)]

    backends = [("python", _pykernel)] + ([("cython", _ckernel)] if _ckernel else [])
    print("kernel operations (200 polynomial pairs, best of", args.repeat, "runs)")
    kernel_times = {}
    for name, mod in backends:
        t = min(timeit.repeat(lambda: kernel_workload(mod, pairs, values), number=1, repeat=args.repeat))
        kernel_times[name] = t
        print(f"  {name:7s} {t * 1000:8.1f} ms")
    if "cython" in kernel_times:
        print(f"  speedup {kernel_times['python'] / kernel_times['cython']:.2f}x")

    print("corpus with negation check under leg (best of", args.repeat, "runs)")
    corpus_times = {}
    for name, flag in (("python", "1"), ("cython", "0")):
        env = dict(os.environ, VSQE_PURE_PYTHON=flag)
        out = subprocess.run(
            [sys.executable, "-c", CORPUS_RUN.format(repeat=args.repeat)],
            env=env, capture_output=True, text=True, check=True,
        ).stdout.split()
        if out[0] != name:
            print(f"  {name:7s} unavailable")
            continue
        corpus_times[name] = float(out[1])
        print(f"  {name:7s} {corpus_times[name] * 1000:8.1f} ms")
    if len(corpus_times) == 2:
        print(f"  speedup {corpus_times['python'] / corpus_times['cython']:.2f}x")


if __name__ == "__main__":
    main()
