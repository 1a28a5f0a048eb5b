#!/usr/bin/env python3
"""Benchmark the compiled solver kernel against the pure-Python fallback.

Both backends implement the identical retrograde attractor; this reports
wall-clock per solve and the speedup. The compiled kernel is optional at
install time, so this also documents what the fallback costs.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from coplab.graphs import bits, complement, graph_from_edge_mask, make_family, petersen, shrikhande

import coplab._core_py as core_py

try:
    import coplab._core as core
except ImportError:
    core = None


def closed_lists(g):
    return [sorted(bits(g.closed(v))) for v in range(g.n)]


def bench(fn, n, k, closed, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(n, k, closed)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = random.Random(1)
    rand12 = graph_from_edge_mask(12, rng.getrandbits(66))
    cases = [
        ("C4 k=2", make_family("cycle", 4), 2),
        ("P20 k=2", make_family("path", 20), 2),
        ("Petersen k=3", petersen(), 3),
        ("random n=12 k=3", rand12, 3),
        ("Shrikhande-complement k=2", complement(shrikhande()), 2),
        ("Shrikhande-complement k=3", complement(shrikhande()), 3),
    ]

    print(f"{'instance':<28} {'states/side':>12} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, g, k in cases:
        closed = closed_lists(g)
        t_py, out_py = bench(core_py.solve_game, g.n, k, closed, args.repeat)
        states = out_py["M"] * g.n
        if core is None:
            print(f"{name:<28} {states:>12} {t_py:>9.3f}s {'n/a':>10} {'n/a':>8}")
            continue
        t_cy, out_cy = bench(core.solve_game, g.n, k, closed, args.repeat)
        import numpy as np

        for key in ("win_c", "win_r", "rank_c", "rank_r"):
            assert np.array_equal(np.asarray(out_py[key]), np.asarray(out_cy[key])), key
        print(f"{name:<28} {states:>12} {t_py:>9.3f}s {t_cy:>9.3f}s {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
