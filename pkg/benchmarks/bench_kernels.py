#!/usr/bin/env python3
"""Benchmark the Schur-form kernel backends against each other.

Runs batches of random dense complex matrices through the compiled and
pure-python kernels and prints per-matrix timings plus the speedup, along
with a correctness cross-check of the eigenvalue multisets.

Usage:
    python benchmarks/bench_kernels.py [--sizes 8,16,32,64] [--batch 50]
"""

import argparse
import time

import numpy as np

from antidiagkit._kernels import available_backends


def greedy_dist(w1, w2):
    pool = list(w2)
    worst = 0.0
    for lam in w1:
        j = int(np.argmin([abs(lam - m) for m in pool]))
        worst = max(worst, abs(lam - pool.pop(j)))
    return worst


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="8,16,32,64")
    ap.add_argument("--batch", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    backends = available_backends()
    rng = np.random.default_rng(args.seed)

    print(f"backends: {', '.join(backends)}")
    header = f"{'n':>4} {'batch':>6}"
    for name in backends:
        header += f" {name + ' ms/matrix':>20}"
    if len(backends) == 2:
        header += f" {'speedup':>9} {'eig dev':>9}"
    print(header)

    for n in sizes:
        mats = [rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                for _ in range(args.batch)]
        times = {}
        eigs = {}
        for name, mod in backends.items():
            outs = []
            t0 = time.perf_counter()
            for m in mats:
                t, u, status = mod.schur_form(m, 30 * n)
                assert status >= 0
                outs.append(np.diag(t))
            times[name] = (time.perf_counter() - t0) / len(mats) * 1e3
            eigs[name] = outs
        row = f"{n:>4} {args.batch:>6}"
        for name in backends:
            row += f" {times[name]:>20.3f}"
        if len(backends) == 2:
            a, b = list(backends)
            speed = times[a] / times[b] if times[b] > 0 else float("inf")
            dev = max(greedy_dist(x, y) for x, y in zip(eigs[a], eigs[b]))
            row += f" {speed:>8.1f}x {dev:>9.1e}"
        print(row)


if __name__ == "__main__":
    main()
