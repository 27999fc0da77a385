"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Inputs are worst cases for the early-exit loops: associative / bisymmetric /
nondecreasing tables (min, or a bisymmetric projection), so every triple or
quadruple is visited.
"""

import argparse
import time

import numpy as np

from qtchain import _accel, core, kernels


def best(fn, arg, repeat):
    fn(arg)  # warm-up, includes jit compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(arg)
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    for k in (8, 16, 32, 64):
        yield "associativity", k, core.min_op(k).zero_based, kernels.assoc_violation_jit, kernels.assoc_violation_numpy
    for k in (4, 8, 16, 24):
        yield "bisymmetry", k, core.proj_x(k).zero_based, kernels.bisym_violation_jit, kernels.bisym_violation_numpy
    for k in (16, 64):
        yield "nondecreasing", k, core.min_op(k).zero_based, kernels.nondecreasing_violation_jit, kernels.nondecreasing_violation_numpy
    for k in (5, 6):
        yield "enumerate_qn", k, k, kernels.enumerate_qn_jit, kernels.enumerate_qn_numpy


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':<15}{'k':>4}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for name, k, arg, jit_fn, np_fn in cases():
        a, b = jit_fn(arg), np_fn(arg)
        if name == "enumerate_qn":
            assert np.array_equal(a, b)
        else:
            assert tuple(int(c) for c in a) == tuple(b)
        tj, tn = best(jit_fn, arg, args.repeat), best(np_fn, arg, args.repeat)
        print(f"{name:<15}{k:>4}{tj * 1e3:>12.3f}{tn * 1e3:>12.3f}{tn / tj:>9.1f}x")


if __name__ == "__main__":
    main()
