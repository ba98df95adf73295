"""Timing comparison of the compiled and pure-numpy sphere kernels.

Runs the same projected-gradient minimization workload through both
backends and prints per-case timings plus the objective agreement.  The
compiled path needs one warmup call to amortize JIT cost; it is excluded
from the timed region.

Usage: python3 benchmarks/bench_kernels.py [--sizes 4 8 16] [--starts 256]
"""
import argparse
import time

import numpy as np

from normaloid.config import DEFAULT
from normaloid.generators import gen_random
from normaloid.kernels import numba_available, set_backend, sphere_minimize, warmup
from normaloid.linalg import adjoint, operator_norm
from normaloid.pencil import abs_pr_forms, sphere_points


def build_case(n: int, seed: int, starts: int):
    t = gen_random(n, seed)
    t = t / operator_norm(t)
    a, b, gamma = abs_pr_forms(t, 1.0, 1.0, DEFAULT)
    eig_a = np.linalg.eigh((a + adjoint(a)) / 2.0)[1].T.copy()
    sob = sphere_points(n, starts, seed)
    xs = np.vstack([eig_a, sob])
    return a, b, gamma, xs


def run_backend(backend: str, cases, repeats: int) -> list:
    set_backend(backend)
    # one untimed pass so JIT compilation does not pollute the numbers
    a, b, gamma, xs = cases[0]
    sphere_minimize(a, b, xs[:4], gamma)
    out = []
    for a, b, gamma, xs in cases:
        best = None
        t0 = time.perf_counter()
        for _ in range(repeats):
            f, x, evals, conv = sphere_minimize(a, b, xs, gamma)
            best = f
        dt = (time.perf_counter() - t0) / repeats
        out.append((dt, best))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32])
    ap.add_argument("--starts", type=int, default=256)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    warmup()
    cases = [build_case(n, 1234 + n, args.starts) for n in args.sizes]

    numpy_rows = run_backend("numpy", cases, args.repeats)
    if numba_available():
        numba_rows = run_backend("numba", cases, args.repeats)
    else:
        print("numba not importable; timing the numpy backend only")
        numba_rows = [(float("nan"), f) for _, f in numpy_rows]

    print(f"{'n':>4s} {'starts':>7s} {'numpy (s)':>12s} {'numba (s)':>12s} "
          f"{'speedup':>8s} {'|df|':>10s}")
    for n, (dt_np, f_np), (dt_nb, f_nb) in zip(args.sizes, numpy_rows, numba_rows):
        speed = dt_np / dt_nb if dt_nb and dt_nb > 0 else float("nan")
        print(f"{n:4d} {args.starts:7d} {dt_np:12.4f} {dt_nb:12.4f} "
              f"{speed:8.2f} {abs(f_np - f_nb):10.2e}")


if __name__ == "__main__":
    main()
