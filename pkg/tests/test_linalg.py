from __future__ import annotations

import random
from fractions import Fraction

import pytest

from finvar.errors import DimensionMismatch, SingularMatrix
from finvar.fields import Field
from finvar.linalg import DenseMatrix, SubspaceBuilder, nullspace, rref, subspace_contains, subspace_equal

GF5 = Field.gf(5)
GF7 = Field.gf(7)
Q = Field.rationals()


def naive_rank(rows, p):
    """Independent oracle: fraction-free rank over GF(p) by plain
    elimination on Python ints."""
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        sel = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                c = rows[r][col]
                rows[r] = [(a - c * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def test_rref_identity():
    m = DenseMatrix.identity(GF5, 3)
    b = rref(m)
    assert b.rank == 3
    assert b.row_vectors() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_rref_dependent_rows_gf5():
    b = rref(DenseMatrix.from_rows(GF5, [[1, 2], [2, 4]]))
    assert b.rank == 1
    assert b.row_vectors() == [[1, 2]]


def test_rref_rationals():
    b = rref(DenseMatrix.from_rows(Q, [[Fraction(1, 2), 1], [1, 2]]))
    assert b.rank == 1
    assert b.row_vectors() == [[Fraction(1), Fraction(2)]]


def test_rref_idempotent():
    rng = random.Random(7)
    for _ in range(20):
        rows = [[rng.randrange(5) for _ in range(4)] for _ in range(3)]
        b = rref(rows, GF5)
        again = rref(b.row_vectors(), GF5) if b.rank else b
        assert b == again or b.rank == 0


def test_rank_against_oracle():
    rng = random.Random(11)
    for _ in range(40):
        rows = [[rng.randrange(7) for _ in range(5)] for _ in range(rng.randrange(1, 6))]
        assert rref(rows, GF7).rank == naive_rank(rows, 7)


def test_subspace_contains():
    b = rref([[1, 0]], GF7)
    assert subspace_contains(b, [0, 0])
    assert not subspace_contains(b, [0, 1])
    assert subspace_contains(b, [3, 0])
    with pytest.raises(DimensionMismatch):
        subspace_contains(b, [1, 0, 0])


def test_contains_each_own_row():
    rng = random.Random(3)
    rows = [[rng.randrange(5) for _ in range(6)] for _ in range(4)]
    b = rref(rows, GF5)
    for r in b.row_vectors():
        assert subspace_contains(b, r)


def test_subspace_equal_canonical():
    a = rref([[1, 1], [1, -1]], GF7)
    b = rref([[1, 0], [0, 1]], GF7)
    assert subspace_equal(a, b)
    assert not subspace_equal(rref([[1, 0]], GF7), rref([[0, 1]], GF7))
    assert subspace_equal(a, a)


def test_deg2_membership_example():
    # span{x^2, y^2} inside coordinates {x^2, xy, y^2} over GF(5)
    basis = rref([[1, 0, 0], [0, 0, 1]], GF5)
    assert not subspace_contains(basis, [0, 1, 0])


def test_builder_matches_rref(kernel_backend):
    rng = random.Random(kernel_backend)
    for _ in range(10):
        rows = [[rng.randrange(7) for _ in range(5)] for _ in range(6)]
        builder = SubspaceBuilder(GF7, 5)
        for r in rows:
            builder.add(r)
        assert builder.basis() == rref(rows, GF7)


def test_builder_rationals():
    builder = SubspaceBuilder(Q, 3)
    assert builder.add([Fraction(1, 2), 0, 1]) is not None
    assert builder.add([1, 0, 2]) is None  # dependent
    assert builder.add([0, 1, 0]) is not None
    assert builder.rank == 2
    assert builder.contains([2, 3, 4])


def test_nullspace():
    # kernel of [1, 1] over GF(5) is spanned by (1, -1) = (1, 4), canonically [1, 4]
    b = nullspace([[1, 1]], GF5, 2)
    assert b.rank == 1
    assert b.row_vectors() == [[1, 4]]
    full = nullspace([[0, 0]], GF5, 2)
    assert full.rank == 2


def test_matrix_inverse_and_errors():
    m = DenseMatrix.from_rows(GF7, [[1, 2], [3, 4]])
    inv = m.inverse()
    assert m.mul(inv).is_identity()
    with pytest.raises(SingularMatrix):
        DenseMatrix.from_rows(GF7, [[1, 2], [2, 4]]).inverse()


def test_exact_rationals_inverse_product():
    rng = random.Random(5)
    for _ in range(50):
        a = Fraction(rng.randrange(1, 50), rng.randrange(1, 50))
        b = Fraction(rng.randrange(1, 50), rng.randrange(1, 50))
        assert (a / b) * (b / a) == 1
