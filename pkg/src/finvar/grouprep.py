"""Finite matrix groups, subgroups, and representations.

Groups are fully enumerated (breadth-first closure from generators) with
an explicit Cayley table; index 0 is always the identity.  A
Representation stores one action matrix per group element on the full
variable space of its layout.  Action matrices act on variables by
column substitution, x_v -> sum_w M[w][v] x_w, which makes
``action(g h) = action(g) . action(h)`` an honest left action on
polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DecompositionUnavailable,
    DimensionMismatch,
    FinvarError,
    GroupTooLarge,
    NotASubgroup,
)
from .fields import Field
from .linalg import DenseMatrix, nullspace, rref
from .polyring import SparsePolynomial, VariableLayout, apply_linear

GROUP_CAP = 10_000
_VALIDATION_COST_CAP = 5 * 10**7


@dataclass(frozen=True)
class MatrixGroup:
    field: Field
    dim: int
    elements: tuple[DenseMatrix, ...]
    cayley: tuple[tuple[int, ...], ...]
    inverses: tuple[int, ...]
    generator_indices: tuple[int, ...]
    name: str = "group"

    @property
    def order(self) -> int:
        return len(self.elements)

    def mult(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def element_order(self, a: int) -> int:
        n = 1
        x = a
        while x != 0:
            x = self.cayley[x][a]
            n += 1
        return n

    def __repr__(self):
        return f"MatrixGroup({self.name}, |G|={self.order}, dim={self.dim}, {self.field})"


def generate_group(
    gens: list[DenseMatrix], cap: int = GROUP_CAP, name: str = "group"
) -> MatrixGroup:
    """Breadth-first closure of the generators under multiplication."""
    if not gens:
        raise FinvarError("at least one generator (possibly the identity) required")
    fld = gens[0].field
    dim = gens[0].nrows
    for g in gens:
        if g.field != fld or g.nrows != dim or g.ncols != dim:
            raise DimensionMismatch("generators must be square over one field")
        g.inverse()  # raises SingularMatrix for singular generators
    ident = DenseMatrix.identity(fld, dim)
    elements = [ident]
    index = {ident.entries: 0}
    frontier = [ident]
    while frontier:
        new_frontier = []
        for e in frontier:
            for g in gens:
                prod = e.mul(g)
                if prod.entries not in index:
                    if len(elements) >= cap:
                        raise GroupTooLarge(f"group closure exceeds cap {cap}")
                    index[prod.entries] = len(elements)
                    elements.append(prod)
                    new_frontier.append(prod)
        frontier = new_frontier
    n = len(elements)
    cayley = tuple(
        tuple(index[elements[a].mul(elements[b]).entries] for b in range(n))
        for a in range(n)
    )
    inverses = [0] * n
    for a in range(n):
        inverses[a] = cayley[a].index(0)
    gen_idx = tuple(sorted({index[g.entries] for g in gens}))
    return MatrixGroup(fld, dim, tuple(elements), cayley, tuple(inverses), gen_idx, name)


@dataclass(frozen=True)
class SubgroupHandle:
    parent: MatrixGroup
    member_indices: tuple[int, ...]
    transversal: tuple[int, ...]  # left-coset representatives, identity first

    @property
    def order(self) -> int:
        return len(self.member_indices)

    @property
    def index_in_parent(self) -> int:
        return self.parent.order // self.order


def _check_subgroup(group: MatrixGroup, members: set[int]):
    if 0 not in members:
        raise NotASubgroup("identity missing")
    for a in members:
        for b in members:
            if group.cayley[a][b] not in members:
                raise NotASubgroup("member set not closed under multiplication")


def cosets(group: MatrixGroup, h_members: list[int] | tuple[int, ...]) -> SubgroupHandle:
    """Left-coset transversal for the subgroup with the given members."""
    members = set(h_members)
    _check_subgroup(group, members)
    if group.order % len(members):
        raise NotASubgroup("Lagrange violation")
    covered = set()
    transversal = []
    for g in range(group.order):
        if g in covered:
            continue
        transversal.append(g)
        for h in members:
            covered.add(group.cayley[g][h])
    return SubgroupHandle(group, tuple(sorted(members)), tuple(transversal))


def subgroup_as_group(group: MatrixGroup, members: list[int] | tuple[int, ...]) -> MatrixGroup:
    """The subgroup as a standalone MatrixGroup (element 0 stays identity)."""
    members = sorted(set(members))
    _check_subgroup(group, set(members))
    pos = {m: i for i, m in enumerate(members)}
    elements = tuple(group.elements[m] for m in members)
    cayley = tuple(
        tuple(pos[group.cayley[a][b]] for b in members) for a in members
    )
    inverses = tuple(pos[group.inverses[m]] for m in members)
    gen_idx = tuple(range(len(members)))
    return MatrixGroup(
        group.field, group.dim, elements, cayley, inverses, gen_idx,
        name=f"{group.name}-sub{len(members)}",
    )


def all_subgroups(group: MatrixGroup) -> list[tuple[int, ...]]:
    """Every subgroup, as sorted member tuples.  Exhaustive for |G| <= 16."""
    if group.order > 16:
        raise FinvarError("exhaustive subgroup enumeration is capped at |G| <= 16")

    def closure(seed: frozenset[int]) -> frozenset[int]:
        out = set(seed) | {0}
        frontier = list(out)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(out):
                    for c in (group.cayley[a][b], group.cayley[b][a]):
                        if c not in out:
                            out.add(c)
                            nxt.append(c)
            frontier = nxt
        return frozenset(out)

    found = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for sub in frontier:
            for x in range(1, group.order):
                if x in sub:
                    continue
                bigger = closure(sub | {x})
                if bigger not in found:
                    found.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return sorted(tuple(sorted(s)) for s in found)


def is_cyclic(group: MatrixGroup) -> bool:
    return any(group.element_order(a) == group.order for a in range(group.order))


def is_abelian(group: MatrixGroup) -> bool:
    n = group.order
    return all(
        group.cayley[a][b] == group.cayley[b][a] for a in range(n) for b in range(a + 1, n)
    )


@dataclass(frozen=True)
class Representation:
    """Group action on the variables of a layout, one matrix per element."""

    group: MatrixGroup
    layout: VariableLayout
    action: tuple[DenseMatrix, ...]

    def __post_init__(self):
        n = self.group.order
        if len(self.action) != n:
            raise DimensionMismatch("one action matrix per group element")
        dim = self.layout.nvars
        for m in self.action:
            if m.nrows != dim or m.ncols != dim:
                raise DimensionMismatch("action matrices must match the layout")
        if not self.action[0].is_identity():
            raise FinvarError("identity must act trivially")
        if n * n * max(dim, 1) ** 3 <= _VALIDATION_COST_CAP:
            for a in range(n):
                for b in range(n):
                    if self.action[a].mul(self.action[b]).entries != self.action[
                        self.group.cayley[a][b]
                    ].entries:
                        raise FinvarError("action is not a homomorphism")

    @property
    def dim(self) -> int:
        return self.layout.nvars

    def act(self, g: int, f: SparsePolynomial) -> SparsePolynomial:
        return apply_linear(self.action[g], f)

    def is_invariant(self, f: SparsePolynomial) -> bool:
        return all(self.act(g, f) == f for g in self.group.generator_indices)


def natural_representation(group: MatrixGroup, copies: int = 1) -> Representation:
    """The group matrices acting on (copies of) their own column space."""
    layout = VariableLayout(group.dim, copies)
    action = tuple(
        _block_diagonal(group.field, [m] * copies) for m in group.elements
    )
    return Representation(group, layout, action)


def _block_diagonal(fld: Field, blocks: list[DenseMatrix]) -> DenseMatrix:
    n = sum(b.nrows for b in blocks)
    rows = [[fld.zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                rows[off + i][off + j] = b.entry(i, j)
        off += b.nrows
    return DenseMatrix.from_rows(fld, rows)


def left_translation_matrix(group: MatrixGroup, g: int) -> DenseMatrix:
    """Permutation matrix sending basis vector e_h to e_{gh}."""
    n = group.order
    fld = group.field
    rows = [[fld.zero] * n for _ in range(n)]
    for h in range(n):
        rows[group.cayley[g][h]][h] = fld.one
    return DenseMatrix.from_rows(fld, rows)


def regular_representation(group: MatrixGroup) -> Representation:
    """Left translation on the |G|-dimensional space indexed by elements."""
    layout = VariableLayout(group.order, 1)
    action = tuple(left_translation_matrix(group, g) for g in range(group.order))
    return Representation(group, layout, action)


def adjoin_group_variables(rep: Representation) -> Representation:
    """Adjoin |G| extra variables x_g with the action g . x_h = x_{gh}."""
    group = rep.group
    lay = rep.layout
    labels = tuple(lay.labels) if lay.labels is not None else tuple(
        f"u[{k}]" for k in range(lay.extra_vars)
    )
    new_labels = labels + tuple(f"xg[{g}]" for g in range(group.order))
    new_layout = VariableLayout(
        lay.base_dim, lay.copies, lay.extra_vars + group.order, new_labels
    )
    fld = group.field
    action = []
    for g in range(group.order):
        old = rep.action[g]
        perm = left_translation_matrix(group, g)
        n = new_layout.nvars
        rows = [[fld.zero] * n for _ in range(n)]
        for i in range(old.nrows):
            for j in range(old.ncols):
                rows[i][j] = old.entry(i, j)
        off = old.nrows
        for i in range(perm.nrows):
            for j in range(perm.ncols):
                rows[off + i][off + j] = perm.entry(i, j)
        action.append(DenseMatrix.from_rows(fld, rows))
    return Representation(group, new_layout, tuple(action))


def copies_representation(rep: Representation, n: int) -> Representation:
    """n block-diagonal copies; the layout records the copy structure."""
    if rep.layout.copies != 1 or rep.layout.extra_vars != 0:
        raise DimensionMismatch("copies() expects a plain single-block representation")
    layout = VariableLayout(rep.layout.base_dim, n)
    action = tuple(
        _block_diagonal(rep.group.field, [m] * n) for m in rep.action
    )
    return Representation(rep.group, layout, action)


def as_plain(rep: Representation) -> Representation:
    """Reinterpret any representation on a flat single-block layout
    (the action matrices already live on the full variable space)."""
    if rep.layout.copies == 1 and rep.layout.extra_vars == 0:
        return rep
    return Representation(rep.group, VariableLayout(rep.layout.nvars, 1), rep.action)


def direct_sum(a: Representation, b: Representation) -> Representation:
    """Plain concatenation into one single-copy block."""
    if a.group is not b.group and a.group != b.group:
        raise DimensionMismatch("direct sum needs a common group")
    a = as_plain(a)
    b = as_plain(b)
    layout = VariableLayout(a.layout.base_dim + b.layout.base_dim, 1)
    action = tuple(
        _block_diagonal(a.group.field, [a.action[g], b.action[g]])
        for g in range(a.group.order)
    )
    return Representation(a.group, layout, action)


def sum_with_copies(
    u: Representation | None, v: Representation, n: int
) -> Representation:
    """The module U + V^n: copies block of V first, then U as extras."""
    if v.layout.copies != 1 or v.layout.extra_vars != 0:
        raise DimensionMismatch("V must be a plain single-block representation")
    group = v.group
    fld = group.field
    u_dim = 0 if u is None else u.layout.nvars
    if u is not None and (u.group != group):
        raise DimensionMismatch("U and V need a common group")
    labels = tuple(f"u[{k}]" for k in range(u_dim))
    layout = VariableLayout(v.layout.base_dim, n, u_dim, labels if u_dim else None)
    action = []
    for g in range(group.order):
        blocks = [v.action[g]] * n
        if u is not None:
            blocks.append(u.action[g])
        action.append(_block_diagonal(fld, blocks))
    return Representation(group, layout, tuple(action))


def restrict_representation(rep: Representation, members: list[int] | tuple[int, ...]) -> Representation:
    """Restriction to a subgroup, reindexed as its own group."""
    sub = subgroup_as_group(rep.group, members)
    order = {m: i for i, m in enumerate(sorted(set(members)))}
    action = [None] * sub.order
    for m, i in order.items():
        action[i] = rep.action[m]
    return Representation(sub, rep.layout, tuple(action))


# -- isotypic decomposition for abelian groups --------------------------


@dataclass(frozen=True)
class IsotypicBlock:
    """One isotypic block: an identifying character/label, coefficient
    vectors for its coordinates (multiplicity x module_dim rows, copies
    consecutive and coordinate-aligned), and the dimension of the
    underlying simple module (1 for the automatic abelian path)."""

    character: tuple
    vectors: tuple[tuple, ...]
    module_dim: int = 1

    @property
    def multiplicity(self) -> int:
        return len(self.vectors) // self.module_dim


def _eigen_split(fld: Field, block_rows: list[list], matrix: DenseMatrix):
    """Split a stable subspace (RREF rows) into eigenspaces of `matrix`
    acting on coefficient vectors by v -> M v."""
    k = len(block_rows)
    dim = len(block_rows[0])
    pivots = []
    for row in block_rows:
        pivots.append(next(j for j, x in enumerate(row) if not fld.is_zero(x)))
    # restriction matrix: columns express M . b_i in the block basis
    restr = [[fld.zero] * k for _ in range(k)]
    for i, b in enumerate(block_rows):
        img = [
            _dot(fld, [matrix.entry(r, c) for c in range(dim)], b) for r in range(dim)
        ]
        for r in range(k):
            restr[r][i] = img[pivots[r]]
    if fld.is_prime_field:
        candidates = range(fld.p)
    else:
        candidates = (fld.one, fld.neg(fld.one))
    pieces = []
    total = 0
    for lam in candidates:
        lam = fld.coerce(lam)
        shifted = [
            [fld.sub(restr[r][c], lam if r == c else fld.zero) for c in range(k)]
            for r in range(k)
        ]
        ker = nullspace(shifted, fld, k)
        if ker.rank == 0:
            continue
        total += ker.rank
        for coeffs in ker.row_vectors():
            vec = [fld.zero] * dim
            for c, b in zip(coeffs, block_rows):
                c = fld.coerce(c)
                if not fld.is_zero(c):
                    vec = [fld.add(x, fld.mul(c, y)) for x, y in zip(vec, b)]
            pieces.append((lam, vec))
    if total != k:
        raise DecompositionUnavailable(
            "action not diagonalizable over this field (missing roots of unity)"
        )
    grouped: dict = {}
    for lam, vec in pieces:
        grouped.setdefault(lam, []).append(vec)
    return grouped


def _dot(fld: Field, xs, ys):
    acc = fld.zero
    for x, y in zip(xs, ys):
        acc = fld.add(acc, fld.mul(x, y))
    return acc


def character_decomposition(rep: Representation) -> list[IsotypicBlock]:
    """Simultaneous eigenspace decomposition for abelian groups.

    Raises DecompositionUnavailable for non-abelian groups or when the
    field lacks the needed roots of unity.
    """
    group = rep.group
    if not is_abelian(group):
        raise DecompositionUnavailable("automatic decomposition requires an abelian group")
    fld = group.field
    dim = rep.dim
    blocks = [rref(DenseMatrix.identity(fld, dim)).row_vectors()]
    for g in group.generator_indices:
        new_blocks = []
        for rows in blocks:
            for vecs in _eigen_split(fld, rows, rep.action[g]).values():
                new_blocks.append(rref(vecs, fld).row_vectors())
        blocks = new_blocks
    out = []
    for rows in blocks:
        probe = rows[0]
        char = []
        for g in range(group.order):
            img = [
                _dot(fld, [rep.action[g].entry(r, c) for c in range(dim)], probe)
                for r in range(dim)
            ]
            piv = next(j for j, x in enumerate(probe) if not fld.is_zero(x))
            char.append(fld.div(img[piv], probe[piv]))
        out.append(
            IsotypicBlock(tuple(char), tuple(tuple(fld.coerce(x) for x in r) for r in rows))
        )
    # merge blocks that carry an identical character, canonicalize bases
    merged: dict[tuple, list] = {}
    for b in out:
        merged.setdefault(b.character, []).extend(list(v) for v in b.vectors)
    result = []
    for char, vecs in sorted(merged.items(), key=lambda kv: tuple(str(c) for c in kv[0])):
        canon = rref(vecs, fld).row_vectors()
        result.append(
            IsotypicBlock(char, tuple(tuple(fld.coerce(x) for x in r) for r in canon))
        )
    return result
