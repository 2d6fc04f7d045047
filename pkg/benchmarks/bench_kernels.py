"""Compare the compiled and pure-Python kernel backends.

Usage: python benchmarks/bench_kernels.py [--rows N] [--repeat R]
"""

import argparse
import time

import numpy as np

from metamat import family, kernels
from metamat.engine import materialise


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def sorted_keys(rng, n, k, pool):
    rows = rng.integers(0, pool, size=(n, k), dtype=np.int64)
    order = np.lexsort(tuple(rows[:, c] for c in reversed(range(k))))
    return np.ascontiguousarray(rows[order])


def workloads(rows):
    rng = np.random.default_rng(0)
    F = sorted_keys(rng, rows, 2, rows // 4)
    G = sorted_keys(rng, rows, 2, rows // 4)
    # nearly sorted rows keep the number of compress groups small
    C = sorted_keys(rng, rows, 3, rows)
    swaps = rng.integers(0, rows, size=max(1, rows // 2000))
    C[swaps] = C[swaps[::-1]]
    return {
        "semijoin_mask": lambda: kernels.semijoin_mask(F, G),
        "antijoin_mask": lambda: kernels.antijoin_mask(F, G),
        "join_groups": lambda: kernels.join_groups(F, G),
        "greedy_compress": lambda: kernels.greedy_compress(C),
        "family n=1000 m=20": lambda: materialise(*family.build(1000, 20)[1:]),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=50_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    backends = kernels.available_backends()
    results = {}
    previous = kernels.BACKEND
    for name in backends:
        kernels.set_backend(name)
        for label, fn in workloads(args.rows).items():
            results.setdefault(label, {})[name] = best_of(fn, args.repeat)
    kernels.set_backend(previous)

    header = f"{'workload':<22}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(f"rows={args.rows}, best of {args.repeat}, seconds")
    print(header)
    for label, row in results.items():
        line = f"{label:<22}" + "".join(f"{row[b]:>12.4f}" for b in backends)
        if "cython" in row:
            line += f"{row['python'] / row['cython']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
