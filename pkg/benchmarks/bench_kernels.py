"""Compare the compiled and pure-Python kernels on the same work.

Usage: ``python benchmarks/bench_kernels.py [--rows 9 --cols 9 --colors 6]``
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from crushcount import _fallback
from crushcount.grid import candy_grid
from crushcount.rng import level_seed
from crushcount.sampler import constraint_tables

try:
    from crushcount import _kernels
except ImportError:  # extension not built
    _kernels = None


def _time(fn, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench(mod, h, c: int, samples: int) -> dict[str, float]:
    n = h.vertex_count
    full = constraint_tables(h)
    t = n - 1
    pre = constraint_tables(h, t)
    end_ev = np.ascontiguousarray(np.array([h.edges[i].vertices for i in h.edges_ending_at[t]],
                                           dtype=np.int32))
    seed = level_seed(1, "bench", 0)
    colors = np.zeros((samples, n), dtype=np.int32)
    resamples = np.zeros(samples, dtype=np.int64)
    ev = np.ascontiguousarray(h.edge_array())
    return {
        "mt_batch": _time(lambda: mod.mt_batch(full.ev, full.vrank, full.cover, full.cover_end, n, c,
                                               seed, 0, samples, 10 ** 6, full.rewind, colors,
                                               resamples)),
        "level_batch": _time(lambda: mod.level_batch(pre.ev, pre.vrank, pre.cover, pre.cover_end,
                                                     end_ev, t + 1, c, seed, 0, samples, 10 ** 6,
                                                     pre.rewind)),
        "mc_batch": _time(lambda: mod.mc_batch(ev, n, c, seed, 0, samples * 10)),
    }


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--rows", type=int, default=9)
    p.add_argument("--cols", type=int, default=9)
    p.add_argument("--colors", type=int, default=6)
    p.add_argument("--samples", type=int, default=2000)
    args = p.parse_args()
    h = candy_grid(args.rows, args.cols, 3)
    py = bench(_fallback, h, args.colors, args.samples)
    print(f"{args.rows}x{args.cols} grid, c={args.colors}, {args.samples} samples "
          f"({args.samples * 10} for mc_batch)")
    print(f"{'kernel':<12} {'python s':>10} {'cython s':>10} {'speedup':>9}")
    cy = bench(_kernels, h, args.colors, args.samples) if _kernels else {}
    for name, secs in py.items():
        if name in cy:
            print(f"{name:<12} {secs:>10.4f} {cy[name]:>10.4f} {secs / cy[name]:>8.1f}x")
        else:
            print(f"{name:<12} {secs:>10.4f} {'n/a':>10} {'':>9}")


if __name__ == "__main__":
    main()
