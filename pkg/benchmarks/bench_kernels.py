#!/usr/bin/env python3
"""Timing comparison of the numba loop kernels against the pure-numpy path.

Run: python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from spintrio import _kernels, pauli


def timeit(fn, repeat=5):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    if not _kernels.NUMBA_ENABLED:
        raise SystemExit("numba path disabled (SPINTRIO_NO_NUMBA set); "
                         "nothing to compare")
    _, r0 = pauli.initial_state("GHZ")
    rng = np.random.default_rng(0)
    he, hp, hn = rng.normal(size=(3, 3))

    # single RHS evaluation
    _kernels.rhs_three(r0, he, hp, hn, -0.2, -0.1, -0.3)  # warm up jit
    n = 20000
    t_numba = timeit(lambda: [
        _kernels.rhs_three(r0, he, hp, hn, -0.2, -0.1, -0.3)
        for _ in range(n)]) / n
    t_numpy = timeit(lambda: [
        _kernels.rhs_three_numpy(r0, he, hp, hn, -0.2, -0.1, -0.3)
        for _ in range(n // 20)], repeat=3) / (n // 20)
    print(f"rhs_three          numba {t_numba * 1e6:8.2f} us   "
          f"numpy {t_numpy * 1e6:8.2f} us   "
          f"speedup {t_numpy / t_numba:6.1f}x")

    # full drive loop, tau_max = 30 at dt = 1e-3 (the production workload)
    args = (r0, 1e-3, 30000, 10, 0, 1.0, 0.3)
    _kernels._rk4_three(*args, np.array([1.0, 2.0, 4.0]), -0.2, -0.1, -0.3)
    t_numba = timeit(lambda: _kernels._rk4_three(
        *args, np.array([1.0, 2.0, 4.0]), -0.2, -0.1, -0.3))
    t_numpy = timeit(lambda: _kernels._rk4_three_numpy(
        *args, np.array([1.0, 2.0, 4.0]), -0.2, -0.1, -0.3), repeat=3)
    print(f"rk4 drive tau=30   numba {t_numba:8.3f} s    "
          f"numpy {t_numpy:8.3f} s    "
          f"speedup {t_numpy / t_numba:6.1f}x")


if __name__ == "__main__":
    main()
