"""Benchmark the two Jacobi sweep kernels against each other.

Runs the numba-compiled kernel (when available) and the vectorized numpy
kernel on identical random symmetric matrices and prints per-size timings.

    python benchmarks/bench_jacobi.py [--sizes 8,16,32,64] [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from graphspec._kernels import (
    HAS_NUMBA,
    OFF_TOL,
    SWEEP_CAP,
    _jacobi_sweeps,
    _jacobi_sweeps_np,
    _jacobi_sweeps_py,
)


def _time_kernel(kernel, base, repeats):
    best = float("inf")
    for _ in range(repeats):
        a = base.copy()
        v = np.eye(a.shape[0])
        start = time.perf_counter()
        sweeps = kernel(a, v, SWEEP_CAP, OFF_TOL)
        elapsed = time.perf_counter() - start
        if sweeps < 0:
            raise RuntimeError("kernel failed to converge during benchmark")
        best = min(best, elapsed)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="8,16,32,64")
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(args.seed)

    kernels = [("numpy", _jacobi_sweeps_np)]
    if HAS_NUMBA:
        # warm up so compilation time is not measured
        warm = rng.normal(size=(4, 4))
        warm = warm + warm.T
        _jacobi_sweeps(warm.copy(), np.eye(4), SWEEP_CAP, OFF_TOL)
        kernels.append(("numba", _jacobi_sweeps))
    else:
        print("numba unavailable or disabled; timing the pure-python loop instead")
        kernels.append(("python", _jacobi_sweeps_py))

    header = f"{'n':>6} " + " ".join(f"{name:>12}" for name, _ in kernels)
    print(header)
    for n in sizes:
        base = rng.normal(size=(n, n))
        base = base + base.T
        times = [_time_kernel(kernel, base, args.repeats) for _, kernel in kernels]
        row = f"{n:>6} " + " ".join(f"{t * 1e3:>10.3f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"   ({times[0] / times[1]:.1f}x)"
        print(row)


if __name__ == "__main__":
    main()
