"""Property-based checks of the algebraic core."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from finvar.fields import Field
from finvar.linalg import rref
from finvar.polyring import (
    VariableLayout,
    component_to_vector,
    monomials_of_degree,
    partial_derivative,
    vector_to_polynomial,
)
from finvar.weylpol import PolarizationOperator, copies_block, polarize

GF7 = Field.gf(7)
LAYOUT = VariableLayout(2, 2)

entries = st.integers(min_value=0, max_value=6)
small_matrices = st.lists(
    st.lists(entries, min_size=4, max_size=4), min_size=1, max_size=5
)


def poly_of_degree(layout, d):
    monos = monomials_of_degree(layout, d)
    return st.lists(entries, min_size=len(monos), max_size=len(monos)).map(
        lambda coeffs: vector_to_polynomial(coeffs, GF7, layout, d)
    )


@settings(max_examples=40, deadline=None)
@given(small_matrices)
def test_rref_idempotent(rows):
    b = rref(rows, GF7)
    if b.rank:
        assert rref(b.row_vectors(), GF7) == b


@settings(max_examples=40, deadline=None)
@given(small_matrices)
def test_rank_equals_transpose_rank(rows):
    cols = [[row[j] for row in rows] for j in range(4)]
    assert rref(rows, GF7).rank == rref(cols, GF7).rank


@settings(max_examples=25, deadline=None)
@given(
    st.fractions(min_value=Fraction(-50), max_value=Fraction(50)).filter(lambda x: x != 0),
    st.fractions(min_value=Fraction(-50), max_value=Fraction(50)).filter(lambda x: x != 0),
)
def test_rational_arithmetic_exact(a, b):
    f = Field.rationals()
    assert f.mul(f.div(a, b), f.div(b, a)) == 1


@settings(max_examples=25, deadline=None)
@given(poly_of_degree(LAYOUT, 2), poly_of_degree(LAYOUT, 2))
def test_derivative_leibniz(f, g):
    for v in range(LAYOUT.nvars):
        assert partial_derivative(f * g, v) == partial_derivative(
            f, v
        ) * g + f * partial_derivative(g, v)


@settings(max_examples=25, deadline=None)
@given(poly_of_degree(LAYOUT, 2), poly_of_degree(LAYOUT, 2))
def test_polarize_leibniz(f, g):
    blk = copies_block(LAYOUT)
    for (j, jp) in ((0, 1), (1, 0)):
        op = PolarizationOperator(blk, j, jp)
        assert polarize(f * g, op) == polarize(f, op) * g + f * polarize(g, op)


@settings(max_examples=25, deadline=None)
@given(
    poly_of_degree(LAYOUT, 3),
    poly_of_degree(LAYOUT, 3),
    entries,
    entries,
)
def test_vectorization_linear(f, g, a, b):
    lhs = component_to_vector(f.scale(a) + g.scale(b), 3)
    fa = component_to_vector(f, 3)
    gb = component_to_vector(g, 3)
    assert lhs == [(a * x + b * y) % 7 for x, y in zip(fa, gb)]


@settings(max_examples=20, deadline=None)
@given(poly_of_degree(LAYOUT, 2))
def test_polarization_preserves_degree(f):
    blk = copies_block(LAYOUT)
    img = polarize(f, PolarizationOperator(blk, 0, 1))
    if not img.is_zero():
        assert img.is_homogeneous() and img.degree() == 2


@settings(max_examples=20, deadline=None)
@given(poly_of_degree(LAYOUT, 2), poly_of_degree(LAYOUT, 2), poly_of_degree(LAYOUT, 2))
def test_ring_axioms_spot_checked(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
