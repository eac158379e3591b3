"""Timing comparison of the interpreted and compiled matrix kernels.

Run:  python3 benchmarks/bench_matops.py [--size N] [--repeats R]

Measures the three kernel entry points on seeded random Gaussian-rational
matrices and prints per-backend times plus the speedup.  The compiled
backend still does exact object arithmetic, so the gain is bounded by the
loop-bookkeeping share of the runtime; expect low single-digit factors.
"""

import argparse
import random
import time

from diracforge import _matops_py
from diracforge.rationals import ONE, ZERO, rat

try:
    from diracforge import _matops_c
except ImportError:
    _matops_c = None


def rand_flat(rng, n, m, density=0.8):
    return [rat(rng.randint(-9, 9), rng.randint(1, 7))
            if rng.random() < density else ZERO
            for _ in range(n * m)]


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=48)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    n = args.size
    rng = random.Random(20240901)
    ar, ai = rand_flat(rng, n, n), rand_flat(rng, n, n)
    br, bi = rand_flat(rng, n, n), rand_flat(rng, n, n)

    backends = [("python", _matops_py)]
    if _matops_c is not None:
        backends.append(("cython", _matops_c))
    else:
        print("compiled kernel not built; timing the interpreter only")

    cases = {
        "mul_real": lambda mod: mod.mul_real(ar, br, n, n, n, ZERO),
        "mul_cplx": lambda mod: mod.mul_cplx(ar, ai, br, bi, n, n, n, ZERO),
        "rref_cplx": lambda mod: mod.rref_cplx(
            [ar[i * n:(i + 1) * n] for i in range(n)],
            [ai[i * n:(i + 1) * n] for i in range(n)],
            n, n, ZERO, ONE),
    }

    print("size %dx%d, best of %d" % (n, n, args.repeats))
    for name, call in cases.items():
        row = {}
        for label, mod in backends:
            row[label] = best_of(lambda: call(mod), args.repeats)
        line = "  %-10s" % name
        for label, t in row.items():
            line += "  %s %8.4fs" % (label, t)
        if len(row) == 2:
            line += "  speedup %.2fx" % (row["python"] / row["cython"])
        print(line)


if __name__ == "__main__":
    main()
