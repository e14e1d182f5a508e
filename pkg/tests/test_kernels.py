"""The numba and numpy kernel backends must produce identical results."""

from __future__ import annotations

import random

import numpy as np
import pytest

from finvar import kernels
from finvar._kernels_numba import insert_row as nb_insert, reduce_row as nb_reduce, rref_in_place as nb_rref
from finvar._kernels_numpy import insert_row as np_insert, reduce_row as np_reduce, rref_in_place as np_rref


def random_matrix(rng, rows, cols, p):
    return np.array([[rng.randrange(p) for _ in range(cols)] for _ in range(rows)], dtype=np.int64)


@pytest.mark.parametrize("p", [2, 3, 5, 13])
def test_rref_backends_agree(p):
    rng = random.Random(p)
    for _ in range(15):
        m = random_matrix(rng, rng.randrange(1, 7), rng.randrange(1, 7), p)
        a1, a2 = m.copy(), m.copy()
        piv1 = np.zeros(m.shape[0], dtype=np.int64)
        piv2 = np.zeros(m.shape[0], dtype=np.int64)
        r1 = nb_rref(a1, piv1, p)
        r2 = np_rref(a2, piv2, p)
        assert r1 == r2
        assert np.array_equal(a1, a2)
        assert np.array_equal(piv1[:r1], piv2[:r2])


@pytest.mark.parametrize("p", [3, 7])
def test_incremental_insert_agrees(p):
    rng = random.Random(17 * p)
    dim = 6
    b1 = np.zeros((dim, dim), dtype=np.int64)
    b2 = np.zeros((dim, dim), dtype=np.int64)
    piv1 = np.zeros(dim + 1, dtype=np.int64)
    piv2 = np.zeros(dim + 1, dtype=np.int64)
    n1 = n2 = 0
    for _ in range(20):
        vec = np.array([rng.randrange(p) for _ in range(dim)], dtype=np.int64)
        pos1 = nb_insert(b1, piv1, n1, vec.copy(), p)
        pos2 = np_insert(b2, piv2, n2, vec.copy(), p)
        assert pos1 == pos2
        if pos1 >= 0:
            n1 += 1
            n2 += 1
        assert np.array_equal(b1[:n1], b2[:n2])
    probe = np.array([rng.randrange(p) for _ in range(dim)], dtype=np.int64)
    assert nb_reduce(b1, piv1, n1, probe.copy(), p) == np_reduce(b2, piv2, n2, probe.copy(), p)


def test_backend_selection_roundtrip():
    startwith = kernels.active_backend()
    for name in kernels.available_backends():
        kernels.set_backend(name)
        assert kernels.active_backend() == name
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")
    kernels.set_backend(startwith)


def test_rref_canonical_form_properties():
    rng = random.Random(23)
    p = 5
    for _ in range(10):
        m = random_matrix(rng, 4, 6, p)
        a = m.copy()
        piv = np.zeros(4, dtype=np.int64)
        rank = kernels.rref_in_place(a, piv, p)
        for r in range(rank):
            assert a[r, piv[r]] == 1
            for r2 in range(rank):
                if r2 != r:
                    assert a[r2, piv[r]] == 0
        assert list(piv[:rank]) == sorted(piv[:rank])
