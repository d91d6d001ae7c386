"""Compiled versus pure-Python kernels.

    python benchmarks/bench_kernels.py [--sizes 10 11 12 13 14] [--repeat 3]

partition_min is the 3^m subset DP behind every partition count; the
closure and popcount kernels are linear in 2^m.
"""

import argparse
import random
import time

import numpy as np

from phrigid import kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def cases(m, rng):
    n = 1 << m
    values = np.array([rng.randint(-3, 2 * m) for _ in range(n)], dtype=np.int64)
    values[0] = 0
    flags = np.array([rng.random() < 0.01 for _ in range(n)], dtype=bool)
    vmasks = [(1 << rng.randrange(20)) | (1 << rng.randrange(20)) for _ in range(m)]
    return {
        "partition_min": lambda impl: kernels.partition_min(values, m, impl=impl),
        "superset_closure": lambda impl: kernels.superset_closure(flags, m, impl=impl),
        "union_popcount": lambda impl: kernels.union_popcount(vmasks, 0xF, impl=impl),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 11, 12, 13, 14])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    fast, slow = kernels.compiled(), kernels.pure()
    if fast is None:
        raise SystemExit("compiled kernels are not built; run pip install -e . --no-build-isolation")
    rng = random.Random(args.seed)
    print(f"{'kernel':<18}{'m':>4}{'cython s':>12}{'python s':>12}{'speedup':>10}")
    for m in args.sizes:
        for name, fn in cases(m, rng).items():
            tf, a = best_of(lambda: fn(fast), args.repeat)
            ts, b = best_of(lambda: fn(slow), 1 if name == "partition_min" else args.repeat)
            same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
            if not same:
                raise SystemExit(f"{name} disagrees between backends at m={m}")
            print(f"{name:<18}{m:>4}{tf:>12.4f}{ts:>12.4f}{ts / max(tf, 1e-9):>9.0f}x")


if __name__ == "__main__":
    main()
