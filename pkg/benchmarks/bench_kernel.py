#!/usr/bin/env python3
"""Benchmark the compiled segment kernel against the pure-Python fallback.

Usage:  python benchmarks/bench_kernel.py [--to N] [--segment-size S] [--repeat R]

Both backends run the same ranges; outputs are checked for exact
equality before timings are reported.
"""

from __future__ import annotations

import argparse
import time
from math import isqrt

import numpy as np

from pndsum import _kernel_fallback
from pndsum.arith import primes_up_to

try:
    from pndsum import _kernel
except ImportError:
    _kernel = None


def run_backend(mod, lo: int, hi: int, segment_size: int) -> tuple[float, int]:
    primes = primes_up_to(isqrt(hi))
    t0 = time.perf_counter()
    count = 0
    samples = []
    for start in range(lo, hi + 1, segment_size):
        vals = mod.pnd_segment(start, min(start + segment_size - 1, hi), primes)
        count += vals.size
        samples.append(vals)
    return time.perf_counter() - t0, count, np.concatenate(samples)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--to", type=int, default=10**7)
    ap.add_argument("--segment-size", type=int, default=10**6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = [("fallback", _kernel_fallback)]
    if _kernel is not None:
        backends.insert(0, ("compiled", _kernel))
    else:
        print("compiled kernel not built; timing fallback only")

    results = {}
    values = {}
    for name, mod in backends:
        best = float("inf")
        for _ in range(args.repeat):
            elapsed, count, vals = run_backend(mod, 1, args.to, args.segment_size)
            best = min(best, elapsed)
        results[name] = (best, count)
        values[name] = vals
        print(f"{name:>9}: {best:8.3f}s  {args.to / best / 1e6:9.1f} M n/s  ({count} pnds)")

    if len(values) == 2:
        assert np.array_equal(values["compiled"], values["fallback"]), "backend outputs differ"
        ratio = results["fallback"][0] / results["compiled"][0]
        print(f"\noutputs identical; compiled kernel is {ratio:.1f}x faster")


if __name__ == "__main__":
    main()
