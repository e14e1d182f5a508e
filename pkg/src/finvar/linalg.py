"""Exact dense linear algebra over GF(p) and Q.

Subspaces of a coordinatized graded component are always kept in
canonical reduced row echelon form, so span equality is literal equality
of the stored rows.  GF(p) elimination runs through the kernels in
:mod:`finvar.kernels`; the rational path uses ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DimensionMismatch, SingularMatrix
from .fields import Field, Scalar


@dataclass(frozen=True)
class DenseMatrix:
    """Immutable dense matrix with row-major exact entries."""

    field: Field
    nrows: int
    ncols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.nrows * self.ncols:
            raise DimensionMismatch("entry count does not match shape")

    @staticmethod
    def from_rows(field: Field, rows: Sequence[Sequence]) -> DenseMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        ents = []
        for row in rows:
            if len(row) != ncols:
                raise DimensionMismatch("ragged rows")
            ents.extend(field.coerce(x) for x in row)
        return DenseMatrix(field, nrows, ncols, tuple(ents))

    @staticmethod
    def identity(field: Field, n: int) -> DenseMatrix:
        ents = [field.zero] * (n * n)
        for i in range(n):
            ents[i * n + i] = field.one
        return DenseMatrix(field, n, n, tuple(ents))

    def entry(self, i: int, j: int) -> Scalar:
        return self.entries[i * self.ncols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.ncols : (i + 1) * self.ncols]

    def rows(self) -> list[tuple]:
        return [self.row(i) for i in range(self.nrows)]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.ncols + j] for i in range(self.nrows))

    def mul(self, other: DenseMatrix) -> DenseMatrix:
        if self.ncols != other.nrows:
            raise DimensionMismatch("matrix product shape mismatch")
        f = self.field
        out = []
        for i in range(self.nrows):
            ri = self.row(i)
            for j in range(other.ncols):
                acc = f.zero
                for k in range(self.ncols):
                    acc = f.add(acc, f.mul(ri[k], other.entry(k, j)))
                out.append(acc)
        return DenseMatrix(f, self.nrows, other.ncols, tuple(out))

    def transpose(self) -> DenseMatrix:
        ents = tuple(
            self.entries[i * self.ncols + j]
            for j in range(self.ncols)
            for i in range(self.nrows)
        )
        return DenseMatrix(self.field, self.ncols, self.nrows, ents)

    def inverse(self) -> DenseMatrix:
        """Exact inverse via Gauss-Jordan on the augmented matrix."""
        if self.nrows != self.ncols:
            raise SingularMatrix("only square matrices invert")
        f = self.field
        n = self.nrows
        aug = [list(self.row(i)) + [f.one if j == i else f.zero for j in range(n)] for i in range(n)]
        for col in range(n):
            sel = next((r for r in range(col, n) if not f.is_zero(aug[r][col])), None)
            if sel is None:
                raise SingularMatrix("matrix is singular")
            aug[col], aug[sel] = aug[sel], aug[col]
            inv = f.inv(aug[col][col])
            aug[col] = [f.mul(inv, x) for x in aug[col]]
            for r in range(n):
                if r != col and not f.is_zero(aug[r][col]):
                    c = aug[r][col]
                    aug[r] = [f.sub(x, f.mul(c, y)) for x, y in zip(aug[r], aug[col])]
        return DenseMatrix.from_rows(f, [row[n:] for row in aug])

    def is_identity(self) -> bool:
        f = self.field
        return self.nrows == self.ncols and all(
            self.entry(i, j) == (f.one if i == j else f.zero)
            for i in range(self.nrows)
            for j in range(self.ncols)
        )


class GradedSubspaceBasis:
    """Canonical RREF basis of a subspace of a coordinatized component.

    Two bases represent the same subspace iff they are entry-identical,
    so equality is syntactic.
    """

    __slots__ = ("field", "ambient_dim", "_rows", "pivot_cols")

    def __init__(self, field: Field, ambient_dim: int, rows, pivot_cols: tuple[int, ...]):
        self.field = field
        self.ambient_dim = ambient_dim
        self._rows = rows  # ndarray (GF(p)) or tuple of tuples (Q), already canonical
        self.pivot_cols = pivot_cols

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)

    def row_vectors(self) -> list[list[Scalar]]:
        if isinstance(self._rows, np.ndarray):
            return [[int(x) for x in row] for row in self._rows]
        return [list(row) for row in self._rows]

    def contains(self, vec: Sequence) -> bool:
        """True iff vec reduces to zero against the basis rows."""
        if len(vec) != self.ambient_dim:
            raise DimensionMismatch(
                f"vector length {len(vec)} != ambient dim {self.ambient_dim}"
            )
        f = self.field
        if f.is_prime_field:
            p = f.p
            v = np.array([f.coerce(x) for x in vec], dtype=np.int64)
            if self.rank == 0:
                return not np.any(v % p)
            piv = np.asarray(self.pivot_cols, dtype=np.int64)
            return bool(kernels.reduce_row(self._rows, piv, self.rank, v, p))
        v = [f.coerce(x) for x in vec]
        for row, pc in zip(self._rows, self.pivot_cols):
            c = v[pc]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return all(x == 0 for x in v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSubspaceBasis):
            return NotImplemented
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("comparing bases of different ambients")
        if self.pivot_cols != other.pivot_cols:
            return False
        if isinstance(self._rows, np.ndarray):
            return bool(np.array_equal(self._rows, other._rows))
        return self._rows == other._rows

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.pivot_cols))

    def __repr__(self):
        return f"GradedSubspaceBasis(rank={self.rank}, ambient={self.ambient_dim})"


class SubspaceBuilder:
    """Incremental span builder maintaining canonical RREF throughout."""

    def __init__(self, field: Field, ambient_dim: int, capacity_hint: int = 16):
        self.field = field
        self.ambient_dim = ambient_dim
        self.nrows = 0
        if field.is_prime_field:
            cap = max(1, min(ambient_dim, capacity_hint))
            self._mat = np.zeros((cap, ambient_dim), dtype=np.int64)
            self._piv = np.zeros(cap + 1, dtype=np.int64)
        else:
            self._rows: list[list[Fraction]] = []
            self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return self.nrows

    def _grow(self):
        cap = self._mat.shape[0]
        new_cap = min(self.ambient_dim, max(cap * 2, cap + 1))
        mat = np.zeros((new_cap, self.ambient_dim), dtype=np.int64)
        mat[: self.nrows] = self._mat[: self.nrows]
        piv = np.zeros(new_cap + 1, dtype=np.int64)
        piv[: self.nrows] = self._piv[: self.nrows]
        self._mat = mat
        self._piv = piv

    def add(self, vec) -> np.ndarray | list | None:
        """Add a vector to the span.

        Returns the canonical inserted row (a copy) when the vector was
        independent, else None.
        """
        f = self.field
        if f.is_prime_field:
            if self.nrows >= self._mat.shape[0]:
                self._grow()
            if isinstance(vec, np.ndarray):
                v = vec.astype(np.int64) % f.p
            else:
                v = np.array([f.coerce(x) for x in vec], dtype=np.int64)
            if v.shape[0] != self.ambient_dim:
                raise DimensionMismatch("vector length mismatch")
            pos = kernels.insert_row(self._mat, self._piv, self.nrows, v, f.p)
            if pos < 0:
                return None
            self.nrows += 1
            return self._mat[pos].copy()
        v = [f.coerce(x) for x in vec]
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length mismatch")
        for row, pc in zip(self._rows, self._pivots):
            c = v[pc]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        piv = next((j for j, x in enumerate(v) if x != 0), None)
        if piv is None:
            return None
        inv = f.inv(v[piv])
        v = [x * inv for x in v]
        for r in range(self.nrows):
            c = self._rows[r][piv]
            if c:
                self._rows[r] = [a - c * b for a, b in zip(self._rows[r], v)]
        pos = next((r for r, pc in enumerate(self._pivots) if pc > piv), self.nrows)
        self._rows.insert(pos, v)
        self._pivots.insert(pos, piv)
        self.nrows += 1
        return list(v)

    def add_many(self, vecs: Iterable) -> int:
        added = 0
        for v in vecs:
            if self.add(v) is not None:
                added += 1
        return added

    def contains(self, vec) -> bool:
        f = self.field
        if f.is_prime_field:
            if isinstance(vec, np.ndarray):
                v = vec.astype(np.int64) % f.p
            else:
                v = np.array([f.coerce(x) for x in vec], dtype=np.int64)
            if self.nrows == 0:
                return not np.any(v)
            return bool(kernels.reduce_row(self._mat, self._piv, self.nrows, v, f.p))
        v = [f.coerce(x) for x in vec]
        for row, pc in zip(self._rows, self._pivots):
            c = v[pc]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return all(x == 0 for x in v)

    def basis(self) -> GradedSubspaceBasis:
        f = self.field
        if f.is_prime_field:
            rows = self._mat[: self.nrows].copy()
            rows.flags.writeable = False
            piv = tuple(int(x) for x in self._piv[: self.nrows])
            return GradedSubspaceBasis(f, self.ambient_dim, rows, piv)
        rows = tuple(tuple(r) for r in self._rows)
        return GradedSubspaceBasis(f, self.ambient_dim, rows, tuple(self._pivots))


def rref(matrix: DenseMatrix | Sequence[Sequence], field: Field | None = None) -> GradedSubspaceBasis:
    """Canonical reduced row echelon basis of the row space."""
    if isinstance(matrix, DenseMatrix):
        field = matrix.field
        rows = matrix.rows()
        ncols = matrix.ncols
    else:
        if field is None:
            raise ValueError("field required for raw row input")
        rows = [list(r) for r in matrix]
        ncols = len(rows[0]) if rows else 0
    if field.is_prime_field:
        a = np.array(
            [[field.coerce(x) for x in row] for row in rows], dtype=np.int64
        ).reshape(len(rows), ncols)
        piv = np.zeros(max(len(rows), 1), dtype=np.int64)
        rank = kernels.rref_in_place(a, piv, field.p) if len(rows) else 0
        out = a[:rank].copy()
        out.flags.writeable = False
        return GradedSubspaceBasis(field, ncols, out, tuple(int(x) for x in piv[:rank]))
    builder = SubspaceBuilder(field, ncols)
    for row in rows:
        builder.add(row)
    return builder.basis()


def subspace_contains(basis: GradedSubspaceBasis, vec: Sequence) -> bool:
    return basis.contains(vec)


def subspace_equal(a: GradedSubspaceBasis, b: GradedSubspaceBasis) -> bool:
    return a == b


def nullspace(rows: Sequence[Sequence], field: Field, dim: int) -> GradedSubspaceBasis:
    """Canonical basis of {x : R x = 0} for the stacked row matrix R."""
    if not rows:
        return rref(DenseMatrix.identity(field, dim))
    reduced = rref(rows, field)
    pivots = set(reduced.pivot_cols)
    rr = reduced.row_vectors()
    f = field
    free_cols = [j for j in range(dim) if j not in pivots]
    vectors = []
    for fc in free_cols:
        v = [f.zero] * dim
        v[fc] = f.one
        for r, pc in enumerate(reduced.pivot_cols):
            v[pc] = f.neg(f.coerce(rr[r][fc]))
        vectors.append(v)
    if not vectors:
        return GradedSubspaceBasis(
            f,
            dim,
            np.zeros((0, dim), dtype=np.int64) if f.is_prime_field else (),
            (),
        )
    return rref(vectors, f)
