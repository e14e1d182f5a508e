"""Degree-by-degree computation of invariant rings.

Provides the Reynolds operator, canonical bases of the invariant
components, minimal generators via the graded-Nakayama procedure, and
the generator bound beta with Noether termination (cap |G| when the
group order is invertible).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field

from .errors import ModularGroupOrder
from .fields import Field, Scalar
from .linalg import GradedSubspaceBasis, SubspaceBuilder, nullspace, rref
from .polyring import (
    DEFAULT_DIMENSION_CAP,
    SparsePolynomial,
    VariableLayout,
    component_to_vector,
    count_monomials,
    monomials_of_degree,
    vector_to_polynomial,
)
from .grouprep import Representation


@dataclass(frozen=True)
class InvariantComponent:
    degree: int
    basis: GradedSubspaceBasis

    @property
    def dim(self) -> int:
        return self.basis.rank


def _require_invertible_order(rep: Representation):
    fld = rep.group.field
    if fld.is_prime_field and rep.group.order % fld.p == 0:
        raise ModularGroupOrder(
            f"characteristic {fld.p} divides |G| = {rep.group.order}"
        )


def reynolds(f: SparsePolynomial, rep: Representation) -> SparsePolynomial:
    """Averaging projection (1/|G|) sum_g g.f onto the invariants."""
    _require_invertible_order(rep)
    fld = rep.group.field
    acc = SparsePolynomial.zero(fld, rep.layout)
    for g in range(rep.group.order):
        acc = acc + rep.act(g, f)
    return acc.scale(fld.inv(fld.from_int(rep.group.order)))


def _component_action_columns(
    rep: Representation, g: int, d: int, cap: int
) -> list[list[Scalar]]:
    """Columns of the action of element g on the degree-d component."""
    fld = rep.group.field
    monos = monomials_of_degree(rep.layout, d, cap)
    cols = []
    for m in monos:
        poly = rep.act(g, SparsePolynomial.monomial(fld, rep.layout, m))
        cols.append(component_to_vector(poly, d, cap))
    return cols


@functools.lru_cache(maxsize=None)
def invariant_basis(
    rep: Representation,
    d: int,
    method: str = "kernel",
    cap: int = DEFAULT_DIMENSION_CAP,
) -> InvariantComponent:
    """Canonical basis of the fixed subspace of the degree-d component.

    method="kernel": nullspace of the stacked (action(g) - 1) maps over
    the group generators; works in every characteristic.
    method="reynolds": row space of the Reynolds images of all
    monomials; needs |G| invertible.  The two agree whenever both run.
    """
    fld = rep.group.field
    n = count_monomials(rep.layout.nvars, d)
    if method == "reynolds":
        _require_invertible_order(rep)
        rows = []
        for m in monomials_of_degree(rep.layout, d, cap):
            poly = reynolds(SparsePolynomial.monomial(fld, rep.layout, m), rep)
            rows.append(component_to_vector(poly, d, cap))
        return InvariantComponent(d, rref(rows, fld))
    if method != "kernel":
        raise ValueError(f"unknown method {method!r}")
    rows = []
    for g in rep.group.generator_indices:
        if g == 0:
            continue
        cols = _component_action_columns(rep, g, d, cap)
        for r in range(n):
            row = [cols[c][r] for c in range(n)]
            row[r] = fld.sub(row[r], fld.one)
            rows.append(row)
    if not rows:  # trivial group
        from .linalg import DenseMatrix

        return InvariantComponent(d, rref(DenseMatrix.identity(fld, n)))
    return InvariantComponent(d, nullspace(rows, fld, n))


def invariant_dim_by_trace(
    rep: Representation, d: int, cap: int = DEFAULT_DIMENSION_CAP
) -> Scalar:
    """Trace of the Reynolds projection on the degree-d component.

    Equals dim k[V]_d^G reduced into the field.
    """
    _require_invertible_order(rep)
    fld = rep.group.field
    total = fld.zero
    for g in range(rep.group.order):
        cols = _component_action_columns(rep, g, d, cap)
        for c, col in enumerate(cols):
            total = fld.add(total, col[c])
    return fld.mul(total, fld.inv(fld.from_int(rep.group.order)))


@dataclass
class GeneratorLedger:
    """Minimal generators per degree, with the resulting bound beta."""

    field: Field
    layout: VariableLayout
    per_degree: dict[int, list[SparsePolynomial]] = dc_field(default_factory=dict)
    cap_used: int = 0
    complete: bool = False

    @property
    def beta(self) -> int:
        degs = [d for d, gens in self.per_degree.items() if gens]
        return max(degs) if degs else 0

    def generators(self) -> list[SparsePolynomial]:
        out = []
        for d in sorted(self.per_degree):
            out.extend(self.per_degree[d])
        return out

    def counts(self) -> dict[int, int]:
        return {d: len(g) for d, g in sorted(self.per_degree.items()) if g}

    def to_json(self) -> dict:
        from .polyring import render_polynomial

        return {
            "beta": self.beta,
            "cap": self.cap_used,
            "complete": self.complete,
            "field": self.field.to_json(),
            "generators": {
                str(d): [render_polynomial(g) for g in gens]
                for d, gens in sorted(self.per_degree.items())
                if gens
            },
        }


class GradedAlgebraSpans:
    """Degree-wise spans of the subalgebra generated by a set of
    homogeneous polynomials, with memoized product spans."""

    def __init__(self, field: Field, layout: VariableLayout, cap: int = DEFAULT_DIMENSION_CAP):
        self.field = field
        self.layout = layout
        self.cap = cap
        self.gens_by_degree: dict[int, list[SparsePolynomial]] = {}
        self._span_polys: dict[int, list[SparsePolynomial]] = {}

    def add_generator(self, poly: SparsePolynomial, degree: int | None = None):
        d = poly.degree() if degree is None else degree
        if d <= 0:
            raise ValueError("generators must have positive degree")
        self.gens_by_degree.setdefault(d, []).append(poly)
        # spans at degrees >= d computed earlier would be stale
        for dd in [k for k in self._span_polys if k >= d]:
            del self._span_polys[dd]

    def decomposable_builder(self, d: int) -> SubspaceBuilder:
        """Span of all products of lower-degree generators in degree d."""
        n = count_monomials(self.layout.nvars, d)
        builder = SubspaceBuilder(self.field, n)
        for e in sorted(self.gens_by_degree):
            if e >= d:
                break
            rest = self.span_polynomials(d - e)
            for g in self.gens_by_degree[e]:
                for b in rest:
                    builder.add(component_to_vector(g * b, d, self.cap))
        return builder

    def span_polynomials(self, d: int) -> list[SparsePolynomial]:
        """Basis polynomials of the algebra span in degree d >= 1."""
        if d in self._span_polys:
            return self._span_polys[d]
        builder = self.decomposable_builder(d)
        for g in self.gens_by_degree.get(d, ()):
            builder.add(component_to_vector(g, d, self.cap))
        polys = [
            vector_to_polynomial(row, self.field, self.layout, d, self.cap)
            for row in builder.basis().row_vectors()
        ]
        self._span_polys[d] = polys
        return polys

    def span_rank(self, d: int) -> int:
        return len(self.span_polynomials(d))

    def set_span(self, d: int, polys: list[SparsePolynomial]):
        self._span_polys[d] = polys


def minimal_generators_up_to(
    rep: Representation,
    cap: int,
    method: str = "kernel",
    dimension_cap: int = DEFAULT_DIMENSION_CAP,
) -> GeneratorLedger:
    """Graded-Nakayama ledger: in each degree d <= cap the new minimal
    generators form a complement of the span of products of
    lower-degree generators inside the invariant component.

    The complement picks the earliest rows of the canonical invariant
    basis, so output is deterministic.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    fld = rep.group.field
    layout = rep.layout
    ledger = GeneratorLedger(fld, layout, cap_used=cap)
    spans = GradedAlgebraSpans(fld, layout, dimension_cap)
    for d in range(1, cap + 1):
        inv = invariant_basis(rep, d, method=method, cap=dimension_cap)
        builder = spans.decomposable_builder(d)
        new_gens: list[SparsePolynomial] = []
        span_polys: list[SparsePolynomial] = []
        for row in inv.basis.row_vectors():
            added = builder.add(row)
            if added is not None:
                poly = vector_to_polynomial(row, fld, layout, d, dimension_cap)
                new_gens.append(poly)
        ledger.per_degree[d] = new_gens
        for g in new_gens:
            spans.add_generator(g, d)
        # the decomposables plus the new generators span exactly the
        # invariant component, which is the algebra span in degree d
        span_polys = [
            vector_to_polynomial(row, fld, layout, d, dimension_cap)
            for row in builder.basis().row_vectors()
        ]
        spans.set_span(d, span_polys)
    modular = fld.is_prime_field and rep.group.order % fld.p == 0
    ledger.complete = (not modular) and cap >= rep.group.order
    return ledger


def beta(
    rep: Representation,
    method: str = "kernel",
    dimension_cap: int = DEFAULT_DIMENSION_CAP,
) -> tuple[int, GeneratorLedger]:
    """Exact beta(k[V]^G) with certificate ledger.

    Termination cap is |G| (the Noether bound), so |G| must be
    invertible in the field.
    """
    _require_invertible_order(rep)
    ledger = minimal_generators_up_to(
        rep, max(rep.group.order, 1), method=method, dimension_cap=dimension_cap
    )
    return ledger.beta, ledger


def generates_invariants_up_to(
    rep: Representation,
    generators: list[SparsePolynomial],
    cap: int,
    method: str = "kernel",
    dimension_cap: int = DEFAULT_DIMENSION_CAP,
) -> tuple[bool, dict[int, tuple[int, int]]]:
    """Check that a set of invariant polynomials generates the invariant
    ring in every degree <= cap.  Returns (ok, {d: (span, needed)})."""
    spans = GradedAlgebraSpans(rep.group.field, rep.layout, dimension_cap)
    for g in generators:
        if g.is_zero():
            continue
        if not g.is_homogeneous():
            raise ValueError("generators must be homogeneous")
        if not rep.is_invariant(g):
            raise ValueError("generator is not invariant")
        spans.add_generator(g)
    profile: dict[int, tuple[int, int]] = {}
    ok = True
    for d in range(1, cap + 1):
        have = spans.span_rank(d)
        need = invariant_basis(rep, d, method=method, cap=dimension_cap).dim
        profile[d] = (have, need)
        if have != need:
            ok = False
    return ok, profile
