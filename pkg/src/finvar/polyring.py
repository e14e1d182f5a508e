"""Sparse multivariate polynomials on block-structured variable sets.

A :class:`VariableLayout` organizes variables as ``copies`` blocks of a
``base_dim``-dimensional space plus ``extra_vars`` ungrouped variables.
Copy labels are 0-based; block variable (i, j) is coordinate i (1-based)
of copy j, rendered ``x[i,j]``.  Flat variable order is copy-major
(all coordinates of copy 0, then copy 1, ...) with extras last.

Monomials are exponent tuples; term storage order is graded reverse
lexicographic.  The separate exponent-matrix index order (column sums,
then row sums, then row-major entries) is used only by the rewriter.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatch, DimensionOverflow, ParseError, SingularMatrix
from .fields import Field, Scalar
from .linalg import DenseMatrix

DEFAULT_DIMENSION_CAP = 20_000
MAX_EXPONENT = 1 << 16

Monomial = tuple  # exponent tuple, one entry per variable


@dataclass(frozen=True)
class VariableLayout:
    """Variable set: ``copies`` copies of a base space plus extras."""

    base_dim: int
    copies: int = 1
    extra_vars: int = 0
    labels: tuple[str, ...] | None = None  # display names of the extras

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != self.extra_vars:
            raise DimensionMismatch("one label per extra variable")

    @property
    def nvars(self) -> int:
        return self.base_dim * self.copies + self.extra_vars

    def var_index(self, i: int, j: int) -> int:
        """Flat index of block variable (i, j); i is 1-based, j 0-based."""
        if not (1 <= i <= self.base_dim and 0 <= j < self.copies):
            raise DimensionMismatch(f"no block variable ({i},{j}) in {self}")
        return j * self.base_dim + (i - 1)

    def extra_index(self, k: int) -> int:
        if not (0 <= k < self.extra_vars):
            raise DimensionMismatch(f"no extra variable {k}")
        return self.base_dim * self.copies + k

    def copy_vars(self, j: int) -> range:
        start = j * self.base_dim
        return range(start, start + self.base_dim)

    def var_name(self, v: int) -> str:
        block = self.base_dim * self.copies
        if v < block:
            j, i = divmod(v, self.base_dim)
            return f"x[{i + 1},{j}]"
        k = v - block
        if self.labels is not None:
            return self.labels[k]
        return f"u[{k}]"

    def with_copies(self, copies: int) -> VariableLayout:
        return VariableLayout(self.base_dim, copies, self.extra_vars, self.labels)


def grevlex_key(mono: Monomial):
    """Sort key: ascending order is graded reverse lexicographic."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


def count_monomials(nvars: int, d: int) -> int:
    return math.comb(nvars + d - 1, d) if nvars > 0 else (1 if d == 0 else 0)


@functools.lru_cache(maxsize=None)
def _monomials_of_degree(nvars: int, d: int) -> tuple[Monomial, ...]:
    if nvars == 0:
        return ((),) if d == 0 else ()
    out: list[list[int]] = []

    def rec(prefix: list[int], remaining: int, slots: int):
        if slots == 1:
            out.append(prefix + [remaining])
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], d, nvars)
    monos = [tuple(m) for m in out]
    monos.sort(key=grevlex_key, reverse=True)
    return tuple(monos)


def monomials_of_degree(
    layout: VariableLayout, d: int, cap: int = DEFAULT_DIMENSION_CAP
) -> tuple[Monomial, ...]:
    """All monomials of total degree d, leading term first."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    n = count_monomials(layout.nvars, d)
    if n > cap:
        raise DimensionOverflow(
            f"component of degree {d} has dimension {n} > cap {cap}"
        )
    return _monomials_of_degree(layout.nvars, d)


@functools.lru_cache(maxsize=None)
def _monomial_index(nvars: int, d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(_monomials_of_degree(nvars, d))}


class SparsePolynomial:
    """Exact-coefficient sparse polynomial; no zero terms are stored."""

    __slots__ = ("field", "layout", "_terms")

    def __init__(self, field: Field, layout: VariableLayout, terms: dict | None = None):
        self.field = field
        self.layout = layout
        self._terms = terms or {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(field: Field, layout: VariableLayout) -> SparsePolynomial:
        return SparsePolynomial(field, layout)

    @staticmethod
    def constant(field: Field, layout: VariableLayout, c) -> SparsePolynomial:
        c = field.coerce(c)
        terms = {} if field.is_zero(c) else {(0,) * layout.nvars: c}
        return SparsePolynomial(field, layout, terms)

    @staticmethod
    def monomial(field: Field, layout: VariableLayout, exps: Sequence[int], coeff=1) -> SparsePolynomial:
        exps = tuple(exps)
        if len(exps) != layout.nvars:
            raise DimensionMismatch("exponent tuple length mismatch")
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        if sum(exps) >= MAX_EXPONENT or any(e >= MAX_EXPONENT for e in exps):
            raise DimensionOverflow("exponent bound exceeded")
        c = field.coerce(coeff)
        terms = {} if field.is_zero(c) else {exps: c}
        return SparsePolynomial(field, layout, terms)

    @staticmethod
    def variable(field: Field, layout: VariableLayout, v: int) -> SparsePolynomial:
        exps = [0] * layout.nvars
        exps[v] = 1
        return SparsePolynomial.monomial(field, layout, exps)

    # -- inspection ---------------------------------------------------

    def terms(self) -> list[tuple[Monomial, Scalar]]:
        """Terms sorted leading-first (descending grevlex)."""
        return sorted(self._terms.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True)

    def coefficient(self, mono: Monomial) -> Scalar:
        return self._terms.get(tuple(mono), self.field.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self._terms}
        return len(degs) <= 1

    def degree_part(self, d: int) -> SparsePolynomial:
        terms = {m: c for m, c in self._terms.items() if sum(m) == d}
        return SparsePolynomial(self.field, self.layout, terms)

    def homogeneous_parts(self) -> dict[int, SparsePolynomial]:
        parts: dict[int, dict] = {}
        for m, c in self._terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {
            d: SparsePolynomial(self.field, self.layout, t) for d, t in sorted(parts.items())
        }

    def copy_multidegree(self, mono: Monomial) -> tuple[int, ...]:
        """Degree in each copy block, then the extra-block degree."""
        lay = self.layout
        degs = [sum(mono[v] for v in lay.copy_vars(j)) for j in range(lay.copies)]
        extra = sum(mono[lay.base_dim * lay.copies :])
        return tuple(degs) + ((extra,) if lay.extra_vars else ())

    # -- arithmetic ---------------------------------------------------

    def _check_compat(self, other: SparsePolynomial):
        if self.field != other.field or self.layout != other.layout:
            raise DimensionMismatch("polynomials live in different rings")

    def __add__(self, other: SparsePolynomial) -> SparsePolynomial:
        self._check_compat(other)
        f = self.field
        terms = dict(self._terms)
        for m, c in other._terms.items():
            s = f.add(terms.get(m, f.zero), c)
            if f.is_zero(s):
                terms.pop(m, None)
            else:
                terms[m] = s
        return SparsePolynomial(f, self.layout, terms)

    def __neg__(self) -> SparsePolynomial:
        f = self.field
        return SparsePolynomial(f, self.layout, {m: f.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other: SparsePolynomial) -> SparsePolynomial:
        return self + (-other)

    def scale(self, c) -> SparsePolynomial:
        f = self.field
        c = f.coerce(c)
        if f.is_zero(c):
            return SparsePolynomial.zero(f, self.layout)
        return SparsePolynomial(f, self.layout, {m: f.mul(c, v) for m, v in self._terms.items()})

    def __mul__(self, other) -> SparsePolynomial:
        if not isinstance(other, SparsePolynomial):
            return self.scale(other)
        self._check_compat(other)
        f = self.field
        terms: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = f.mul(c1, c2)
                s = f.add(terms.get(m, f.zero), c)
                if f.is_zero(s):
                    terms.pop(m, None)
                else:
                    terms[m] = s
        for m in terms:
            if sum(m) >= MAX_EXPONENT or any(e >= MAX_EXPONENT for e in m):
                raise DimensionOverflow("exponent bound exceeded")
        return SparsePolynomial(f, self.layout, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> SparsePolynomial:
        if e < 0:
            raise ValueError("negative power")
        result = SparsePolynomial.constant(self.field, self.layout, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return (
            self.field == other.field
            and self.layout == other.layout
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.field, self.layout, frozenset(self._terms.items())))

    def __repr__(self):
        return f"SparsePolynomial({render_polynomial(self)!r})"


# -- calculus and substitution ----------------------------------------


def partial_derivative(f: SparsePolynomial, var: int) -> SparsePolynomial:
    """Formal derivative; exponent coefficients may vanish mod p."""
    fld = f.field
    terms: dict = {}
    for m, c in f._terms.items():
        e = m[var]
        if e == 0:
            continue
        coef = fld.mul(c, fld.from_int(e))
        if fld.is_zero(coef):
            continue
        m2 = m[:var] + (e - 1,) + m[var + 1 :]
        s = fld.add(terms.get(m2, fld.zero), coef)
        if fld.is_zero(s):
            terms.pop(m2, None)
        else:
            terms[m2] = s
    return SparsePolynomial(fld, f.layout, terms)


def substitute_linear(f: SparsePolynomial, images: Sequence[SparsePolynomial]) -> SparsePolynomial:
    """Substitute variable v by images[v] (one polynomial per variable)."""
    fld = f.field
    out = SparsePolynomial.zero(fld, f.layout)
    pow_cache: dict[tuple[int, int], SparsePolynomial] = {}

    def power(v: int, e: int) -> SparsePolynomial:
        key = (v, e)
        got = pow_cache.get(key)
        if got is None:
            got = images[v] ** e
            pow_cache[key] = got
        return got

    for m, c in f._terms.items():
        term = SparsePolynomial.constant(fld, f.layout, c)
        for v, e in enumerate(m):
            if e:
                term = term * power(v, e)
        out = out + term
    return out


@functools.lru_cache(maxsize=None)
def _assert_invertible(g: DenseMatrix):
    g.inverse()  # raises SingularMatrix


def _monomial_matrix_map(g: DenseMatrix) -> list[tuple[int, Scalar]] | None:
    """For a monomial matrix, [(row, coeff)] per variable; else None."""
    n = g.ncols
    out = []
    for v in range(n):
        col = [(w, g.entry(w, v)) for w in range(n) if not g.field.is_zero(g.entry(w, v))]
        if len(col) != 1:
            return None
        out.append(col[0])
    return out


def apply_linear(g: DenseMatrix, f: SparsePolynomial) -> SparsePolynomial:
    """Substitute each variable by its g-image linear form.

    Variable v maps to the column-v form sum_w g[w][v] x_w, so
    apply_linear(g*h, f) == apply_linear(g, apply_linear(h, f)).
    """
    n = f.layout.nvars
    if g.nrows != n or g.ncols != n:
        raise DimensionMismatch("matrix size must equal the variable count")
    _assert_invertible(g)
    fld = f.field
    mono_map = _monomial_matrix_map(g)
    if mono_map is not None:
        terms: dict = {}
        for m, c in f._terms.items():
            exps = [0] * n
            coef = c
            for v, e in enumerate(m):
                if e:
                    w, a = mono_map[v]
                    exps[w] += e
                    coef = fld.mul(coef, fld.pow(a, e))
            if fld.is_zero(coef):
                continue
            key = tuple(exps)
            s = fld.add(terms.get(key, fld.zero), coef)
            if fld.is_zero(s):
                terms.pop(key, None)
            else:
                terms[key] = s
        return SparsePolynomial(fld, f.layout, terms)
    images = []
    for v in range(n):
        imgs = {}
        for w in range(n):
            c = g.entry(w, v)
            if not fld.is_zero(c):
                mono = tuple(1 if t == w else 0 for t in range(n))
                imgs[mono] = c
        images.append(SparsePolynomial(fld, f.layout, imgs))
    return substitute_linear(f, images)


def permute_copies(f: SparsePolynomial, perm: Sequence[int]) -> SparsePolynomial:
    """Substitute x[i,j] -> x[i, perm[j]]; extras are fixed."""
    lay = f.layout
    if sorted(perm) != list(range(lay.copies)):
        raise DimensionMismatch("not a permutation of the copies")
    ell = lay.base_dim
    terms = {}
    for m, c in f._terms.items():
        exps = list(m)
        for j in range(lay.copies):
            tgt = perm[j]
            exps[tgt * ell : (tgt + 1) * ell] = m[j * ell : (j + 1) * ell]
        terms[tuple(exps)] = c
    return SparsePolynomial(f.field, lay, terms)


def reindex(
    f: SparsePolynomial, new_layout: VariableLayout, var_map: Sequence[int | None]
) -> SparsePolynomial:
    """Move f to another layout; var_map[v] is the new flat index of
    old variable v (None requires exponent zero)."""
    terms = {}
    for m, c in f._terms.items():
        exps = [0] * new_layout.nvars
        for v, e in enumerate(m):
            if e == 0:
                continue
            tgt = var_map[v]
            if tgt is None:
                raise DimensionMismatch("monomial uses a dropped variable")
            exps[tgt] += e
        terms[tuple(exps)] = c
    return SparsePolynomial(f.field, new_layout, terms)


def embed_in_copies(f: SparsePolynomial, copies: int) -> SparsePolynomial:
    """View f on a layout with at least as many copies (same extras)."""
    lay = f.layout
    if copies < lay.copies:
        raise DimensionMismatch("target layout has fewer copies")
    new_layout = lay.with_copies(copies)
    block = lay.base_dim * lay.copies
    var_map: list[int | None] = list(range(block))
    for k in range(lay.extra_vars):
        var_map.append(new_layout.extra_index(k))
    return reindex(f, new_layout, var_map)


def restitution(f: SparsePolynomial, keep: int) -> SparsePolynomial:
    """Set the variables of copies keep..n-1 to zero and drop them."""
    lay = f.layout
    if keep > lay.copies:
        raise DimensionMismatch("cannot keep more copies than present")
    new_layout = lay.with_copies(keep)
    block_keep = lay.base_dim * keep
    block_all = lay.base_dim * lay.copies
    terms = {}
    for m, c in f._terms.items():
        if any(m[v] for v in range(block_keep, block_all)):
            continue
        exps = m[:block_keep] + m[block_all:]
        terms[exps] = c
    return SparsePolynomial(f.field, new_layout, terms)


def set_variables_zero(f: SparsePolynomial, vars_to_zero: Iterable[int]) -> SparsePolynomial:
    dead = set(vars_to_zero)
    terms = {m: c for m, c in f._terms.items() if not any(m[v] for v in dead)}
    return SparsePolynomial(f.field, f.layout, terms)


# -- coordinatization ---------------------------------------------------


def component_to_vector(
    f: SparsePolynomial, d: int, cap: int = DEFAULT_DIMENSION_CAP
) -> list[Scalar]:
    """Coefficient vector of the degree-d part against monomial order."""
    monos = monomials_of_degree(f.layout, d, cap)
    index = _monomial_index(f.layout.nvars, d)
    vec = [f.field.zero] * len(monos)
    for m, c in f._terms.items():
        if sum(m) == d:
            vec[index[m]] = c
    return vec


def vector_to_polynomial(
    vec: Sequence, field: Field, layout: VariableLayout, d: int, cap: int = DEFAULT_DIMENSION_CAP
) -> SparsePolynomial:
    monos = monomials_of_degree(layout, d, cap)
    if len(vec) != len(monos):
        raise DimensionMismatch("vector length != component dimension")
    terms = {}
    for m, c in zip(monos, vec):
        c = field.coerce(c)
        if not field.is_zero(c):
            terms[m] = c
    return SparsePolynomial(field, layout, terms)


# -- the exponent-matrix index order used by the rewriter ----------------


class ExponentMatrixIndex(NamedTuple):
    """Index of an exponent matrix: comparing these named tuples is the
    lexicographic comparison of the concatenation (column sums, then
    row sums, then entries left-to-right, top-to-bottom)."""

    column_sums: tuple[int, ...]
    row_sums: tuple[int, ...]
    row_major_entries: tuple[int, ...]

    def flatten(self) -> tuple[int, ...]:
        return self.column_sums + self.row_sums + self.row_major_entries


def exponent_matrix(mono: Monomial, layout: VariableLayout) -> tuple[tuple[int, ...], ...]:
    """Exponents as a base_dim x copies matrix; rows are coordinates."""
    if any(mono[layout.base_dim * layout.copies :]):
        raise DimensionMismatch("monomial touches extra variables")
    ell = layout.base_dim
    return tuple(
        tuple(mono[j * ell + (i - 1)] for j in range(layout.copies))
        for i in range(1, ell + 1)
    )


def index_vector(mono: Monomial, layout: VariableLayout) -> ExponentMatrixIndex:
    a = exponent_matrix(mono, layout)
    ell = layout.base_dim
    n = layout.copies
    return ExponentMatrixIndex(
        column_sums=tuple(sum(a[i][j] for i in range(ell)) for j in range(n)),
        row_sums=tuple(sum(a[i]) for i in range(ell)),
        row_major_entries=tuple(a[i][j] for i in range(ell) for j in range(n)),
    )


def index_compare(a: Monomial, b: Monomial, layout: VariableLayout) -> int:
    """-1, 0, or 1 as a precedes, equals, or follows b in index order."""
    ia, ib = index_vector(a, layout), index_vector(b, layout)
    if ia < ib:
        return -1
    if ia > ib:
        return 1
    return 0


# -- textual rendering and parsing ---------------------------------------


def _coeff_str(field: Field, c: Scalar) -> str:
    return str(c)


def render_polynomial(f: SparsePolynomial) -> str:
    if f.is_zero():
        return "0"
    lay = f.layout
    parts = []
    for m, c in f.terms():
        factors = []
        for v, e in enumerate(m):
            if e == 0:
                continue
            name = lay.var_name(v)
            factors.append(name if e == 1 else f"{name}^{e}")
        if not factors:
            parts.append(_coeff_str(f.field, c))
        elif c == f.field.one:
            parts.append("*".join(factors))
        else:
            parts.append(_coeff_str(f.field, c) + "*" + "*".join(factors))
    return " + ".join(parts)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_][A-Za-z_0-9]*\[[-\d,\s]+\])"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[\^*+()-]))"
)


def _var_lookup(layout: VariableLayout) -> dict[str, int]:
    names = {}
    for v in range(layout.nvars):
        names[layout.var_name(v).replace(" ", "")] = v
    return names


def parse_polynomial(text: str, field: Field, layout: VariableLayout) -> SparsePolynomial:
    """Round-trip parser for render_polynomial output."""
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"bad token at {text[pos:]!r}")
            break
        pos = m.end()
        for kind in ("num", "var", "name", "op"):
            val = m.group(kind)
            if val is not None:
                tokens.append((kind, val.replace(" ", "")))
                break
    names = _var_lookup(layout)
    result = SparsePolynomial.zero(field, layout)
    i = 0
    sign = 1
    n_tok = len(tokens)

    def parse_factor(i: int) -> tuple[SparsePolynomial, int]:
        kind, val = tokens[i]
        if kind == "num":
            if "/" in val:
                a, b = val.split("/")
                from fractions import Fraction

                c = field.coerce(Fraction(int(a), int(b)))
            else:
                c = field.from_int(int(val))
            return SparsePolynomial.constant(field, layout, c), i + 1
        if kind in ("var", "name"):
            if val not in names:
                raise ParseError(f"unknown variable {val!r}")
            poly = SparsePolynomial.variable(field, layout, names[val])
            i += 1
            if i < n_tok and tokens[i] == ("op", "^"):
                if i + 1 >= n_tok or tokens[i + 1][0] != "num":
                    raise ParseError("exponent expected after ^")
                poly = poly ** int(tokens[i + 1][1])
                i += 2
            return poly, i
        raise ParseError(f"unexpected token {val!r}")

    while i < n_tok:
        kind, val = tokens[i]
        if kind == "op" and val in "+-":
            if val == "-":
                sign = -sign
            i += 1
            continue
        term, i = parse_factor(i)
        while i < n_tok and tokens[i] == ("op", "*"):
            nxt, i2 = parse_factor(i + 1)
            term = term * nxt
            i = i2
        result = result + (term if sign > 0 else -term)
        sign = 1
    return result
