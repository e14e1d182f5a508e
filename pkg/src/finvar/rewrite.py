"""Constructive rewriting of monomials into the polarization span.

Expresses a monomial on ell+1 copies of an ell-dimensional space (total
degree at most (p-1) ell) as an explicit combination of polarization
operators and copy permutations applied to monomials on the last ell
copies.  The descent follows the exponent-matrix index order: sort
columns and rows, pick the first nonzero entry above the antidiagonal,
shift one unit of degree with a single operator application, and invert
the resulting leading coefficient; when that coefficient vanishes mod p
the matrix splits and the rewriter recurses on an ell'-dimensional
submatrix whose certificate lifts by multiplying the untouched columns
back in.

Certificates are DAGs of replayable steps; replay is pure polynomial
arithmetic (sources, operator applications, copy permutations, explicit
scalings by precomputed field inverses, and sums) and must reproduce
the target monomial exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegreeOutOfRange, InversionFailure
from .fields import Field
from .polyring import (
    SparsePolynomial,
    VariableLayout,
    exponent_matrix,
    permute_copies,
)
from .weylpol import PolarizationOperator, copies_block, polarize

Matrix = tuple  # tuple of row tuples, shape ell x (ell+1)


class _Node:
    __slots__ = ("kind", "matrix", "j", "jp", "perm", "scalar", "children", "l_prime")

    def __init__(self, kind, *, matrix=None, j=None, jp=None, perm=None,
                 scalar=None, children=(), l_prime=None):
        self.kind = kind
        self.matrix = matrix
        self.j = j
        self.jp = jp
        self.perm = perm
        self.scalar = scalar
        self.children = tuple(children)
        self.l_prime = l_prime


def _matrix_degree(a: Matrix) -> int:
    return sum(sum(row) for row in a)


def _col_sums(a: Matrix) -> tuple[int, ...]:
    ell = len(a)
    return tuple(sum(a[i][j] for i in range(ell)) for j in range(len(a[0])))


def _row_sums(a: Matrix) -> tuple[int, ...]:
    return tuple(sum(row) for row in a)


def _with_entry(a: Matrix, i: int, j: int, delta: int) -> Matrix:
    rows = [list(r) for r in a]
    rows[i][j] += delta
    return tuple(tuple(r) for r in rows)


def _permute_columns(a: Matrix, perm) -> Matrix:
    """Column perm[t] of the result is column t of a."""
    ncols = len(a[0])
    rows = []
    for row in a:
        new = [0] * ncols
        for t in range(ncols):
            new[perm[t]] = row[t]
        rows.append(tuple(new))
    return tuple(rows)


def _permute_rows(a: Matrix, perm) -> Matrix:
    """Row perm[t] of the result is row t of a."""
    out = [None] * len(a)
    for t, row in enumerate(a):
        out[perm[t]] = row
    return tuple(out)


def _stable_sort_perm(keys) -> tuple[int, ...]:
    """perm with perm[t] = new position of item t under a stable sort."""
    order = sorted(range(len(keys)), key=lambda t: (keys[t], t))
    perm = [0] * len(keys)
    for new_pos, old in enumerate(order):
        perm[old] = new_pos
    return tuple(perm)


def _map_dag(root: _Node, rebuild, memo: dict | None = None):
    """Bottom-up rebuild/evaluation of a node DAG (iterative, preserves
    sharing).  A caller-supplied memo shares work across invocations;
    the caller must then keep the original nodes alive (ids are keys)."""
    if memo is None:
        memo = {}
    keep = []  # strong refs so ids stay unique for the local memo
    stack = [root]
    while stack:
        node = stack[-1]
        if id(node) in memo:
            stack.pop()
            continue
        missing = [c for c in node.children if id(c) not in memo]
        if missing:
            stack.extend(missing)
            continue
        memo[id(node)] = rebuild(node, [memo[id(c)] for c in node.children])
        keep.append(node)
        stack.pop()
    return memo[id(root)]


class _Builder:
    """Shared certificate builder for one prime p (memoized across
    dimensions and targets)."""

    def __init__(self, p: int):
        self.p = p
        self.field = Field.gf(p)
        self.memo: dict[tuple[int, Matrix], _Node] = {}
        self._relabel_memo: dict[tuple, dict] = {}
        self.replay_cache: dict[int, SparsePolynomial] = {}

    # -- node constructors --------------------------------------------

    def _assemble(self, ell: int, a: Matrix) -> _Node:
        """One descent step for a sorted matrix with nonzero column 0."""
        p = self.p
        ncols = ell + 1
        pivot = None
        for i in range(ell):
            for j in range(ncols):
                if i + j <= ell - 1 and a[i][j] != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            raise InversionFailure(f"no pivot above the antidiagonal: {a}")
        i, j = pivot
        for nu in range(i):
            if a[nu][j + 1] != 0:
                raise InversionFailure(f"nonzero entry above the pivot column: {a}")
        return ("pivot", i, j)

    def build(self, ell: int, a: Matrix) -> _Node:
        """Certificate node for x^a on ell+1 copies of an ell-dim space."""
        if 0 not in _col_sums(a) and _matrix_degree(a) > (self.p - 1) * ell:
            # monomials missing a copy entirely are trivially certified
            # (sort the empty copy to position 0) in any degree
            raise DegreeOutOfRange(
                f"degree {_matrix_degree(a)} exceeds (p-1)*ell = {(self.p - 1) * ell}"
            )
        stack: list[tuple[int, Matrix]] = [(ell, a)]
        while stack:
            ell_cur, cur = stack[-1]
            key = (ell_cur, cur)
            if key in self.memo:
                stack.pop()
                continue
            node = self._step(ell_cur, cur, stack)
            if node is not None:
                self.memo[key] = node
                stack.pop()
        return self.memo[(ell, a)]

    def _step(self, ell: int, a: Matrix, stack) -> _Node | None:
        """Resolve one matrix; push missing dependencies and return None
        when children are not built yet."""
        p = self.p
        ncols = ell + 1
        csums = _col_sums(a)
        # base case: nothing on copy 0
        if csums[0] == 0:
            return _Node("source", matrix=a)
        # canonicalize columns (ascending column sums)
        if any(csums[t] > csums[t + 1] for t in range(ncols - 1)):
            perm = _stable_sort_perm(csums)
            sorted_a = _permute_columns(a, perm)
            child_key = (ell, sorted_a)
            if child_key not in self.memo:
                stack.append(child_key)
                return None
            # x^a = permute_copies(x^sorted, perm) since sorted[t] = a[inv(perm)[t]]
            inv = [0] * ncols
            for t in range(ncols):
                inv[perm[t]] = t
            return _Node("perm", perm=tuple(inv), children=(self.memo[child_key],))
        rsums = _row_sums(a)
        # canonicalize rows (ascending row sums); a variable relabeling
        # inside each copy, pushed into the sources of the certificate
        if any(rsums[t] > rsums[t + 1] for t in range(ell - 1)):
            perm = _stable_sort_perm(rsums)
            sorted_a = _permute_rows(a, perm)
            child_key = (ell, sorted_a)
            if child_key not in self.memo:
                stack.append(child_key)
                return None
            inv = [0] * ell
            for t in range(ell):
                inv[perm[t]] = t
            return self._relabel_rows(self.memo[child_key], tuple(inv))
        # pivot: first row-major nonzero entry above the antidiagonal
        kind, i, j = self._assemble(ell, a)
        a_bar = _with_entry(_with_entry(a, i, j, -1), i, j + 1, +1)
        coeff = (a[i][j + 1] + 1) % p
        if coeff != 0:
            deps = [(ell, a_bar)]
            nus = [
                nu
                for nu in range(i + 1, ell)
                if a[nu][j + 1] % p != 0
            ]
            for nu in nus:
                deps.append((ell, self._nu_matrix(a, i, j, nu)))
            missing = [k for k in deps if k not in self.memo]
            if missing:
                stack.extend(missing)
                return None
            op_node = _Node("op", j=j, jp=j + 1, children=(self.memo[(ell, a_bar)],))
            children = [op_node]
            for nu in nus:
                c = (-a[nu][j + 1]) % p
                children.append(
                    _Node(
                        "scale",
                        scalar=c,
                        children=(self.memo[(ell, self._nu_matrix(a, i, j, nu))],),
                    )
                )
            body = children[0] if len(children) == 1 else _Node("sum", children=children)
            inv_coeff = pow(coeff, -1, p)
            return _Node("scale", scalar=inv_coeff, children=(body,))
        # vanishing leading coefficient: split off an ell'-dim block
        if a[i][j + 1] % p != p - 1 or a[i][j] < 1:
            raise InversionFailure(f"split invariants violated at {a}")
        if i == 0:
            raise InversionFailure(f"split would not shrink the dimension: {a}")
        ell_prime = ell - i
        sub = tuple(tuple(row[: ell_prime + 1]) for row in a[i:])
        if _matrix_degree(sub) > (p - 1) * ell_prime:
            raise InversionFailure(f"submatrix degree bound violated: {a}")
        for nu in range(i):
            if any(a[nu][c] for c in range(ell_prime + 1)):
                raise InversionFailure(f"upper-left block not zero: {a}")
        child_key = (ell_prime, sub)
        if child_key not in self.memo:
            stack.append(child_key)
            return None
        lifted = self._lift(self.memo[child_key], ell, ell_prime, row_offset=i, full=a)
        return _Node("block", l_prime=ell_prime, children=(lifted,))

    @staticmethod
    def _nu_matrix(a: Matrix, i: int, j: int, nu: int) -> Matrix:
        out = _with_entry(_with_entry(a, i, j, -1), i, j + 1, +1)
        out = _with_entry(_with_entry(out, nu, j, +1), nu, j + 1, -1)
        return out

    def _relabel_rows(self, node: _Node, row_perm: tuple[int, ...]) -> _Node:
        """Push a coordinate relabeling (within each copy) into the
        sources; operators and copy permutations are row-symmetric.  The
        transform memo is shared across calls so shared subtrees are
        rebuilt once per distinct relabeling."""

        def rebuild(n: _Node, kids):
            if n.kind == "source":
                return _Node("source", matrix=_permute_rows(n.matrix, row_perm))
            return self._clone(n, kids)

        memo = self._relabel_memo.setdefault(row_perm, {})
        return _map_dag(node, rebuild, memo)

    def _lift(self, node: _Node, ell: int, ell_prime: int, row_offset: int, full: Matrix) -> _Node:
        """Lift an (ell', ell'+1) certificate into the (ell, ell+1)
        layout: offset the rows, extend permutations by fixed points,
        and multiply every source by the untouched columns of `full`."""
        ncols = ell + 1
        tail = tuple(
            tuple(full[r][c] if c > ell_prime else 0 for c in range(ncols))
            for r in range(ell)
        )

        def rebuild(n: _Node, kids):
            if n.kind == "source":
                big = [[0] * ncols for _ in range(ell)]
                for r in range(ell_prime):
                    for c in range(ell_prime + 1):
                        big[row_offset + r][c] = n.matrix[r][c]
                for r in range(ell):
                    for c in range(ncols):
                        big[r][c] += tail[r][c]
                return _Node("source", matrix=tuple(tuple(r) for r in big))
            if n.kind == "perm":
                perm = tuple(n.perm) + tuple(range(ell_prime + 1, ncols))
                return _Node("perm", perm=perm, children=kids)
            return self._clone(n, kids)

        return _map_dag(node, rebuild)

    @staticmethod
    def _clone(n: _Node, kids) -> _Node:
        return _Node(
            n.kind,
            matrix=n.matrix,
            j=n.j,
            jp=n.jp,
            perm=n.perm,
            scalar=n.scalar,
            children=kids,
            l_prime=n.l_prime,
        )


_BUILDERS: dict[int, _Builder] = {}


def _builder(p: int) -> _Builder:
    if p not in _BUILDERS:
        _BUILDERS[p] = _Builder(p)
    return _BUILDERS[p]


@dataclass
class RewriteCertificate:
    """Replayable derivation of a monomial from the last ell copies."""

    p: int
    ell: int
    target: Matrix
    root: _Node

    @property
    def layout(self) -> VariableLayout:
        return VariableLayout(self.ell, self.ell + 1)

    def target_polynomial(self) -> SparsePolynomial:
        return _matrix_monomial(Field.gf(self.p), self.layout, self.target)

    def source_terms(self) -> list[Matrix]:
        out = []
        seen = set()

        def rebuild(n: _Node, kids):
            if n.kind == "source" and n.matrix not in seen:
                seen.add(n.matrix)
                out.append(n.matrix)
            return n

        _map_dag(self.root, rebuild)
        return out

    def replay(self, cache: dict | None = None) -> SparsePolynomial:
        """Evaluate the step DAG with exact polynomial arithmetic.

        A caller-supplied cache shares values of subderivations across
        certificates (the arithmetic per node is identical either way).
        """
        field = Field.gf(self.p)
        layout = self.layout
        block = copies_block(layout)

        def rebuild(n: _Node, kids):
            if n.kind == "source":
                return _matrix_monomial(field, layout, n.matrix)
            if n.kind == "op":
                return polarize(kids[0], PolarizationOperator(block, n.j, n.jp))
            if n.kind == "perm":
                return permute_copies(kids[0], n.perm)
            if n.kind == "scale":
                return kids[0].scale(n.scalar)
            if n.kind == "sum":
                acc = kids[0]
                for k in kids[1:]:
                    acc = acc + k
                return acc
            if n.kind == "block":
                return kids[0]
            raise ValueError(f"unknown node kind {n.kind}")

        return _map_dag(self.root, rebuild, cache)

    def verify_shared(self, cache: dict) -> bool:
        return self.replay(cache) == self.target_polynomial()

    def verify(self) -> bool:
        return self.replay() == self.target_polynomial()

    def step_count(self) -> int:
        count = 0
        seen = set()
        stack = [self.root]
        while stack:
            n = stack.pop()
            if id(n) in seen:
                continue
            seen.add(id(n))
            count += 1
            stack.extend(n.children)
        return count

    def to_json(self) -> dict:
        nodes = []
        ids: dict[int, int] = {}
        stack = [self.root]
        post: list[_Node] = []
        while stack:
            n = stack[-1]
            if id(n) in ids:
                stack.pop()
                continue
            missing = [c for c in n.children if id(c) not in ids]
            if missing:
                stack.extend(missing)
                continue
            ids[id(n)] = len(nodes)
            entry = {"id": len(nodes), "kind": n.kind}
            if n.kind == "source":
                entry["matrix"] = [list(r) for r in n.matrix]
            elif n.kind == "op":
                entry["j"] = n.j
                entry["jp"] = n.jp
                entry["arg"] = ids[id(n.children[0])]
            elif n.kind == "perm":
                entry["perm"] = list(n.perm)
                entry["arg"] = ids[id(n.children[0])]
            elif n.kind == "scale":
                entry["value"] = int(n.scalar)
                entry["arg"] = ids[id(n.children[0])]
            elif n.kind == "sum":
                entry["args"] = [ids[id(c)] for c in n.children]
            elif n.kind == "block":
                entry["l_prime"] = n.l_prime
                entry["arg"] = ids[id(n.children[0])]
            nodes.append(entry)
            post.append(n)
            stack.pop()
        return {
            "p": self.p,
            "l": self.ell,
            "target": [list(r) for r in self.target],
            "root": ids[id(self.root)],
            "steps": nodes,
        }


def certificate_from_json(obj: dict) -> RewriteCertificate:
    nodes: list[_Node] = []
    for entry in obj["steps"]:
        kind = entry["kind"]
        if kind == "source":
            nodes.append(_Node("source", matrix=tuple(tuple(r) for r in entry["matrix"])))
        elif kind == "op":
            nodes.append(_Node("op", j=entry["j"], jp=entry["jp"], children=(nodes[entry["arg"]],)))
        elif kind == "perm":
            nodes.append(_Node("perm", perm=tuple(entry["perm"]), children=(nodes[entry["arg"]],)))
        elif kind == "scale":
            nodes.append(_Node("scale", scalar=entry["value"], children=(nodes[entry["arg"]],)))
        elif kind == "sum":
            nodes.append(_Node("sum", children=tuple(nodes[i] for i in entry["args"])))
        elif kind == "block":
            nodes.append(_Node("block", l_prime=entry["l_prime"], children=(nodes[entry["arg"]],)))
        else:
            raise ValueError(f"unknown step kind {kind}")
    return RewriteCertificate(
        p=obj["p"],
        ell=obj["l"],
        target=tuple(tuple(r) for r in obj["target"]),
        root=nodes[obj["root"]],
    )


def _matrix_monomial(field: Field, layout: VariableLayout, a: Matrix) -> SparsePolynomial:
    exps = [0] * layout.nvars
    for i in range(layout.base_dim):
        for j in range(layout.copies):
            exps[layout.var_index(i + 1, j)] = a[i][j]
    return SparsePolynomial.monomial(field, layout, exps)


def matrix_of_monomial(mono, layout: VariableLayout) -> Matrix:
    return exponent_matrix(mono, layout)


def rewrite_monomial(target, p: int, ell: int | None = None) -> RewriteCertificate:
    """Certificate for a monomial on ell+1 copies; the monomial may be
    given as an exponent matrix (rows = coordinates, columns = copies)
    or as an exponent tuple on the (ell, ell+1) layout.

    Raises DegreeOutOfRange above (p-1) ell; inside that range an
    InversionFailure would contradict the span theorem and is raised as
    an internal error with the offending matrix.
    """
    if isinstance(target, tuple) and target and isinstance(target[0], tuple):
        a = target
    else:
        if ell is None:
            raise ValueError("pass an exponent matrix or supply ell")
        a = exponent_matrix(tuple(target), VariableLayout(ell, ell + 1))
    a = tuple(tuple(int(x) for x in row) for row in a)
    ell = len(a)
    if any(len(row) != ell + 1 for row in a):
        raise ValueError("exponent matrix must be ell x (ell+1)")
    if any(x < 0 for row in a for x in row):
        raise ValueError("negative exponents")
    root = _builder(p).build(ell, a)
    return RewriteCertificate(p=p, ell=ell, target=a, root=root)
