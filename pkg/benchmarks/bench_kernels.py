#!/usr/bin/env python3
"""Benchmark the numba and numpy counting kernels against each other.

Times the positivity+PPT verdict kernel on freshly sampled ball points for
each state family and both backends, checks that the tallies agree exactly,
and prints throughput.  The full sampling path (draws + ball map + kernel)
is timed separately so the kernel share of the budget is visible.

Usage: python benchmarks/bench_kernels.py [--samples N] [--seed S]
"""

import argparse
import time

import numpy as np

from sepmc import kernels
from sepmc.engine import run_chunk
from sepmc.sampler import derive_stream, sample_ball
from sepmc.states import CASES


def time_backend(pts, tag, backend, repeats=3):
    best = float("inf")
    counts = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        counts = kernels.count_tallies(pts, tag, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return counts, best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=500_000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    backends = ["numpy"]
    if kernels._count_numba is not None:
        backends.insert(0, "numba")
    else:
        print("numba is not importable; benchmarking the numpy path only")

    n = args.samples
    print(f"{n} samples per case, best of 3 runs; active backend: {kernels.BACKEND}")
    header = f"{'case':<10} " + "".join(f"{b + ' ns/sample':>18}" for b in backends)
    print(header + f"{'speedup':>10}   tallies (n_positive, n_sep)")
    for case in CASES.values():
        pts = sample_ball(case.num_coeffs, case.radius, derive_stream(args.seed, 0, 0), n)
        pts[: n // 50] *= 0.12  # force some interior points through the PPT branch
        results = {}
        times = {}
        for backend in backends:
            kernels.count_tallies(pts[:4096], case.tag, backend=backend)  # warm-up/JIT
            results[backend], times[backend] = time_backend(pts, case.tag, backend)
        tallies = set(results.values())
        if len(tallies) != 1:
            raise SystemExit(f"backend tallies disagree for {case.tag}: {results}")
        row = f"{case.tag:<10} " + "".join(f"{times[b] / n * 1e9:>18.0f}" for b in backends)
        if len(backends) == 2:
            row += f"{times['numpy'] / times['numba']:>9.1f}x"
        else:
            row += f"{'-':>10}"
        print(row + f"   {results[backends[0]]}")

    # end-to-end chunk throughput (sampling + kernel) on the active backend
    print(f"\nend-to-end run_chunk throughput ({kernels.BACKEND} backend):")
    for case in CASES.values():
        run_chunk(case.tag, derive_stream(args.seed, 0, 1), 4096)  # warm-up
        t0 = time.perf_counter()
        run_chunk(case.tag, derive_stream(args.seed, 0, 2), n)
        dt = time.perf_counter() - t0
        print(f"  {case.tag:<10} {dt / n * 1e9:>8.0f} ns/sample "
              f"({n / dt / 1e6:.2f} Msamples/s)")


if __name__ == "__main__":
    main()
