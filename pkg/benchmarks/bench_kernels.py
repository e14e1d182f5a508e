"""Benchmark the GF(p) elimination kernels: numba vs pure numpy.

Two workloads:
  * batch RREF of random dense matrices,
  * incremental span building (the access pattern of the polarization
    closures), plus one real closure grid point per backend.

Run:  python3 benchmarks/bench_kernels.py [--quick]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from finvar import kernels


def bench_rref(backend: str, n: int, size: int, p: int) -> float:
    kernels.set_backend(backend)
    rng = random.Random(42)
    mats = [
        np.array([[rng.randrange(p) for _ in range(size)] for _ in range(size)], dtype=np.int64)
        for _ in range(n)
    ]
    piv = np.zeros(size, dtype=np.int64)
    # warm up JIT outside the timed region
    kernels.rref_in_place(mats[0].copy(), piv.copy(), p)
    t0 = time.perf_counter()
    for m in mats:
        kernels.rref_in_place(m.copy(), piv, p)
    return time.perf_counter() - t0


def bench_inserts(backend: str, n: int, dim: int, p: int) -> float:
    kernels.set_backend(backend)
    rng = random.Random(7)
    vecs = [
        np.array([rng.randrange(p) for _ in range(dim)], dtype=np.int64) for _ in range(n)
    ]
    basis = np.zeros((dim, dim), dtype=np.int64)
    piv = np.zeros(dim + 1, dtype=np.int64)
    kernels.insert_row(basis.copy(), piv.copy(), 0, vecs[0].copy(), p)
    t0 = time.perf_counter()
    basis[:] = 0
    nrows = 0
    for v in vecs:
        if kernels.insert_row(basis, piv, nrows, v.copy(), p) >= 0:
            nrows += 1
    return time.perf_counter() - t0


def bench_closure(backend: str, quick: bool) -> float:
    kernels.set_backend(backend)
    from finvar.weylpol import weyl_theorem_check

    point = (2, 5, 2, 3, 6) if quick else (2, 5, 3, 4, 8)
    t0 = time.perf_counter()
    rec = weyl_theorem_check(*point)
    assert rec.holds
    return time.perf_counter() - t0


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()
    n_rref, size = (50, 80) if args.quick else (100, 200)
    n_ins, dim = (2000, 120) if args.quick else (5000, 250)
    rows = []
    for backend in kernels.available_backends():
        t_rref = bench_rref(backend, n_rref, size, 5)
        t_ins = bench_inserts(backend, n_ins, dim, 5)
        t_clo = bench_closure(backend, args.quick)
        rows.append((backend, t_rref, t_ins, t_clo))
    print(f"{'backend':10} {'rref':>10} {'inserts':>10} {'closure':>10}")
    for backend, a, b, c in rows:
        print(f"{backend:10} {a:9.3f}s {b:9.3f}s {c:9.3f}s")
    if len(rows) == 2:
        base = {r[0]: r[1:] for r in rows}
        if "numba" in base and "numpy" in base:
            speedups = [
                base["numpy"][i] / base["numba"][i] if base["numba"][i] else float("inf")
                for i in range(3)
            ]
            print(
                "numba speedup: "
                + ", ".join(f"{s:.1f}x" for s in speedups)
                + "  (rref, inserts, closure)"
            )


if __name__ == "__main__":
    main()
