"""Pure-numpy fallback for the GF(p) row-reduction kernels.

Same contracts as :mod:`finvar._kernels_numba`: int64 arrays, entries in
[0, p).  Column operations are vectorized; the row loop stays in Python.
No dot-product accumulation, so int64 cannot overflow for p < 2**31.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"


def rref_in_place(a, pivots, p):
    m, n = a.shape
    rank = 0
    for col in range(n):
        nz = np.flatnonzero(a[rank:, col] % p)
        if nz.size == 0:
            continue
        sel = rank + int(nz[0])
        if sel != rank:
            a[[rank, sel]] = a[[sel, rank]]
        inv = pow(int(a[rank, col]) % p, -1, p)
        a[rank] = (a[rank] * inv) % p
        col_vals = a[:, col].copy()
        col_vals[rank] = 0
        hot = np.flatnonzero(col_vals % p)
        if hot.size:
            a[hot] = (a[hot] - col_vals[hot, None] * a[rank][None, :]) % p
        pivots[rank] = col
        rank += 1
        if rank == m:
            break
    a[rank:] = 0
    return rank


def reduce_row(basis, pivots, nrows, vec, p):
    for r in range(nrows):
        c = int(vec[pivots[r]]) % p
        if c:
            vec -= c * basis[r]
            vec %= p
    return not np.any(vec % p)


def insert_row(basis, pivots, nrows, vec, p):
    for r in range(nrows):
        c = int(vec[pivots[r]]) % p
        if c:
            vec -= c * basis[r]
            vec %= p
    nz = np.flatnonzero(vec % p)
    if nz.size == 0:
        return -1
    piv = int(nz[0])
    inv = pow(int(vec[piv]) % p, -1, p)
    vec *= inv
    vec %= p
    if nrows:
        col_vals = basis[:nrows, piv] % p
        hot = np.flatnonzero(col_vals)
        if hot.size:
            basis[hot] = (basis[hot] - col_vals[hot, None] * vec[None, :]) % p
    pos = int(np.searchsorted(pivots[:nrows], piv))
    basis[pos + 1 : nrows + 1] = basis[pos:nrows]
    pivots[pos + 1 : nrows + 1] = pivots[pos:nrows]
    basis[pos] = vec
    pivots[pos] = piv
    return pos
