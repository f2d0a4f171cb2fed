#!/usr/bin/env python3
"""Benchmark the Jacobi eigensolver: compiled kernel vs pure-numpy fallback.

The compiled path is whatever ``photonsim`` picked at import time (numba
unless PHOTONSIM_NO_NUMBA is set); the fallback is called directly so both
run in one process.  Results are checked against each other before timing.

Usage: python3 benchmarks/bench_eigensolver.py [--sizes 4 8 16 32 64] [--reps 20]
"""

import argparse
import time

import numpy as np

from photonsim._kernels import _jacobi_numpy, jacobi_eigh, numba_enabled


def random_hermitian(n, rng):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (m + m.conj().T) / 2


def bench(fn, matrices, reps):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        for m in matrices:
            fn(m)
        best = min(best, (time.perf_counter() - t0) / len(matrices))
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32, 64])
    ap.add_argument("--reps", type=int, default=20)
    ap.add_argument("--matrices", type=int, default=5,
                    help="matrices per size (timed as a batch)")
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    label = "numba" if numba_enabled() else "numpy (PHOTONSIM_NO_NUMBA set or numba missing)"
    print(f"dispatch path: {label}")
    print(f"{'dim':>5} {'dispatch (ms)':>14} {'numpy fallback (ms)':>20} {'speedup':>8}")

    # warm up the JIT outside the timed region
    jacobi_eigh(random_hermitian(4, rng))

    for n in args.sizes:
        mats = [random_hermitian(n, rng) for _ in range(args.matrices)]
        for m in mats:
            w1, v1 = jacobi_eigh(m)
            w2, _ = _jacobi_numpy(m, 1e-12, 100)
            assert np.allclose(np.sort(w1), np.sort(w2), atol=1e-10), "paths disagree"
            assert np.linalg.norm(v1 @ np.diag(w1) @ v1.conj().T - m) < 1e-10
        t_fast = bench(jacobi_eigh, mats, args.reps)
        t_numpy = bench(lambda m: _jacobi_numpy(m, 1e-12, 100), mats, args.reps)
        print(f"{n:>5} {t_fast * 1e3:>14.3f} {t_numpy * 1e3:>20.3f} {t_numpy / t_fast:>7.1f}x")


if __name__ == "__main__":
    main()
