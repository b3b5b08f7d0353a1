#!/usr/bin/env python3
"""Benchmark the oracle's coarse-scan kernel: numba JIT vs numpy fallback.

Times the full direction-grid scan for a range of face sizes at the
default grid density (the worst case, d = 6 at 25 points/dim, walks
about 9.8 million directions).  The numba path must be importable; run
with HSPROJ_BACKEND=auto (default) or numba.

Usage:
    python benchmarks/bench_backends.py [--points 25] [--repeats 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from hsproj import Model, _scan
from hsproj.oracle import random_point, random_simplex


def scan_inputs(model: Model, n: int, d: int, seed: int):
    s = random_simplex(model, n, seed=seed)
    p = random_point(model, seed + 1)
    face0 = np.arange(d)
    pts = s.vertices[face0]
    Q = np.ascontiguousarray(s.edge_matrix[np.ix_(face0, face0)])
    w = (pts * model.signature) @ p
    f = np.ascontiguousarray(pts[:, 0])
    return Q, w, f, model.curvature == -1


def time_scan(fn, args, repeats: int) -> float:
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=25, help="grid points per angle dimension")
    ap.add_argument("--repeats", type=int, default=3, help="timing repeats (best is kept)")
    args = ap.parse_args()

    if not _scan.using_numba:
        print("numba backend unavailable (HSPROJ_BACKEND=numpy or numba missing);")
        print("timing the numpy fallback only\n")

    model = Model.hyperbolic(7)
    print(f"coarse-scan kernel, {args.points} grid points per angle dimension")
    header = f"{'face size':>9}  {'directions':>11}  {'numpy':>9}"
    if _scan.using_numba:
        header += f"  {'numba':>9}  {'speedup':>7}"
    print(header)

    for d in range(3, 7):
        Q, w, f, hyper = scan_inputs(model, 6, d, seed=7 + d)
        cos_tab, sin_tab = _scan.angle_tables(d, args.points)
        total = _scan.grid_size(d, args.points)
        kernel_args = (cos_tab, sin_tab, Q, w, f, hyper)

        t_np = time_scan(_scan.scan_grid_numpy, kernel_args, args.repeats)
        row = f"{d:>9}  {total:>11,}  {t_np:>8.3f}s"
        if _scan.using_numba:
            _scan.scan_grid_numba(*kernel_args)  # warm the JIT outside the timer
            t_nb = time_scan(_scan.scan_grid_numba, kernel_args, args.repeats)
            row += f"  {t_nb:>8.3f}s  {t_np / t_nb:>6.1f}x"
            c_np = _scan.scan_grid_numpy(*kernel_args)[0]
            c_nb = _scan.scan_grid_numba(*kernel_args)[0]
            assert abs(c_np - c_nb) <= 1e-12, "backends disagree"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
