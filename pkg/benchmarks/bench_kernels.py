"""Time the truncated-series kernels: numba against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--length 64] [--reps 2000]

Both paths are imported from one process; the numba path is warmed up first
so compilation time is not counted.
"""

import argparse
import timeit

import numpy as np

from metakit import _kernels as k


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--length", type=int, default=64)
    p.add_argument("--reps", type=int, default=2000)
    p.add_argument("--q", type=int, default=13)
    args = p.parse_args()
    rng = np.random.default_rng(0)
    n, q = args.length, args.q
    a = rng.integers(0, q, n).astype(np.int64)
    a[0] = 1
    b = rng.integers(0, q, n).astype(np.int64)
    paths = {"numpy": (k.series_mul_numpy, k.series_inv_numpy)}
    if k.USING_NUMBA:
        paths["numba"] = (k.series_mul, k.series_inv)
    for name, (mul, inv) in paths.items():
        assert np.array_equal(mul(a, b, n, q), k.series_mul_numpy(a, b, n, q))
        assert np.array_equal(inv(a, n, q), k.series_inv_numpy(a, n, q))
        tm = timeit.timeit(lambda: mul(a, b, n, q), number=args.reps) / args.reps
        ti = timeit.timeit(lambda: inv(a, n, q), number=args.reps) / args.reps
        print(f"{name:6s} length={n} mul {tm * 1e6:8.2f} us  inv {ti * 1e6:8.2f} us")
    if not k.USING_NUMBA:
        print("numba path unavailable (disabled or not installed)")


if __name__ == "__main__":
    main()
