"""Numba-compiled GF(p) row-reduction kernels.

All kernels operate on int64 arrays with entries already reduced into
[0, p).  Row operations never accumulate dot products, so intermediate
values stay below p**2 < 2**62 and cannot overflow.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def _modinv(a, p):
    # Fermat: a^(p-2) mod p
    r = 1
    b = a % p
    e = p - 2
    while e > 0:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


@njit(cache=True)
def rref_in_place(a, pivots, p):
    """Reduced row echelon form of ``a`` in place (Gauss-Jordan).

    Returns the rank; pivot columns are written to ``pivots[:rank]``.
    Rows below the rank are zeroed.
    """
    m, n = a.shape
    rank = 0
    for col in range(n):
        sel = -1
        for r in range(rank, m):
            if a[r, col] % p != 0:
                sel = r
                break
        if sel < 0:
            continue
        if sel != rank:
            for j in range(n):
                tmp = a[rank, j]
                a[rank, j] = a[sel, j]
                a[sel, j] = tmp
        inv = _modinv(a[rank, col] % p, p)
        for j in range(n):
            a[rank, j] = (a[rank, j] * inv) % p
        for r in range(m):
            if r != rank:
                c = a[r, col] % p
                if c != 0:
                    for j in range(n):
                        a[r, j] = (a[r, j] - c * a[rank, j]) % p
        pivots[rank] = col
        rank += 1
        if rank == m:
            break
    for r in range(rank, m):
        for j in range(n):
            a[r, j] = 0
    return rank


@njit(cache=True)
def reduce_row(basis, pivots, nrows, vec, p):
    """Eliminate ``vec`` in place against a canonical RREF basis.

    Returns True when the residual is zero (vec lies in the span).
    """
    n = vec.shape[0]
    for r in range(nrows):
        c = vec[pivots[r]] % p
        if c != 0:
            for j in range(n):
                vec[j] = (vec[j] - c * basis[r, j]) % p
    for j in range(n):
        if vec[j] % p != 0:
            return False
    return True


@njit(cache=True)
def insert_row(basis, pivots, nrows, vec, p):
    """Insert ``vec`` into a canonical RREF basis, keeping it canonical.

    ``basis`` must have spare row capacity.  Returns the insertion
    position, or -1 when vec was already in the span.  ``vec`` is
    destroyed.
    """
    n = vec.shape[0]
    for r in range(nrows):
        c = vec[pivots[r]] % p
        if c != 0:
            for j in range(n):
                vec[j] = (vec[j] - c * basis[r, j]) % p
    piv = -1
    for j in range(n):
        if vec[j] % p != 0:
            piv = j
            break
    if piv < 0:
        return -1
    inv = _modinv(vec[piv] % p, p)
    for j in range(n):
        vec[j] = (vec[j] * inv) % p
    for r in range(nrows):
        c = basis[r, piv] % p
        if c != 0:
            for j in range(n):
                basis[r, j] = (basis[r, j] - c * vec[j]) % p
    pos = nrows
    for r in range(nrows):
        if pivots[r] > piv:
            pos = r
            break
    for r in range(nrows, pos, -1):
        for j in range(n):
            basis[r, j] = basis[r - 1, j]
        pivots[r] = pivots[r - 1]
    for j in range(n):
        basis[pos, j] = vec[j]
    pivots[pos] = piv
    return pos
