#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times the batched family evaluation (the sweep hot loop) and the small
Hermitian eigensolver on both backends and prints a comparison table.

    python3 benchmarks/bench_backends.py [--grid N] [--repeats K]
"""

import argparse
import sys
import time
from math import pi
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from qflip import _kernels_py  # noqa: E402

try:
    from qflip import _speedups
except ImportError:
    _speedups = None


def _grid(n):
    ticks = np.arange(1, n + 1) / (n + 1)
    aa, cc, tt = np.meshgrid(ticks, ticks, ticks * pi, indexing="ij")
    return aa.ravel(), cc.ravel(), tt.ravel()


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_grid(backend, name, a, c, t, repeats):
    seconds, data = _time(lambda: backend.grid_eval(a, c, t), repeats)
    rate = a.size / seconds
    print(f"  {name:<10} {seconds * 1e3:10.1f} ms   {rate:12.0f} points/s   max_err {data['max_err'].max():.2e}")
    return seconds, data


def bench_eig(backend, name, mats, repeats):
    def run():
        out = None
        for m in mats:
            out = backend.eigvalsh_small(m)
        return out

    seconds, _ = _time(run, repeats)
    print(f"  {name:<10} {seconds * 1e3:10.1f} ms   {len(mats) / seconds:12.0f} solves/s")
    return seconds


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", type=int, default=40, help="points per axis (default 40)")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    a, c, t = _grid(args.grid)
    print(f"family evaluation, {args.grid}^3 = {a.size} points (best of {args.repeats}):")
    t_py, data_py = bench_grid(_kernels_py, "python", a, c, t, args.repeats)
    if _speedups is not None:
        t_cy, data_cy = bench_grid(_speedups, "compiled", a, c, t, args.repeats)
        worst = max(
            float(np.max(np.abs(np.asarray(data_py[k]) - np.asarray(data_cy[k]))))
            for k in data_py
        )
        print(f"  speedup {t_py / t_cy:5.1f}x, cross-backend max deviation {worst:.2e}")
    else:
        print("  compiled backend not built; run `python3 setup.py build_ext --inplace`")

    rng = np.random.default_rng(7)
    mats = []
    for _ in range(2000):
        m = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
        mats.append((m + m.conj().T) / 2)
    print(f"\nhermitian eigensolves, {len(mats)} matrices of dim 12 (best of {args.repeats}):")
    t_py = bench_eig(_kernels_py, "python", mats, args.repeats)
    if _speedups is not None:
        t_cy = bench_eig(_speedups, "compiled", mats, args.repeats)
        print(f"  speedup {t_py / t_cy:5.1f}x")


if __name__ == "__main__":
    main()
