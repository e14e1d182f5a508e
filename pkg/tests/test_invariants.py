from __future__ import annotations

import pytest

from finvar import catalog
from finvar.errors import ModularGroupOrder
from finvar.fields import Field
from finvar.grouprep import adjoin_group_variables, generate_group, natural_representation
from finvar.invariants import (
    beta,
    generates_invariants_up_to,
    invariant_basis,
    invariant_dim_by_trace,
    minimal_generators_up_to,
    reynolds,
)
from finvar.linalg import DenseMatrix
from finvar.polyring import SparsePolynomial, parse_polynomial, render_polynomial
from finvar.universal import beta_k_upper_bound

GF5 = Field.gf(5)
GF7 = Field.gf(7)


@pytest.fixture(scope="module")
def reps():
    out = {}
    out["s2"] = catalog.instance("s2-gf5").rep
    out["z3"] = catalog.instance("z3-gf7").rep
    out["v4"] = catalog.instance("klein4-gf5").rep
    out["trivial2"] = catalog.instance("trivial-2var").rep
    return out


class TestReynolds:
    def test_trivial_group(self, reps):
        f = parse_polynomial("x[1,0]^2", GF5, reps["trivial2"].layout)
        assert reynolds(f, reps["trivial2"]) == f

    def test_swap_average(self, reps):
        rep = reps["s2"]
        x = SparsePolynomial.variable(GF5, rep.layout, 0)
        assert render_polynomial(reynolds(x, rep)) == "3*x[1,0] + 3*x[2,0]"

    def test_z3_character(self, reps):
        rep = reps["z3"]
        x = SparsePolynomial.variable(GF7, rep.layout, 0)
        assert reynolds(x, rep).is_zero()
        assert reynolds(x ** 3, rep) == x ** 3

    def test_projection_property(self, reps):
        rep = reps["s2"]
        f = parse_polynomial("x[1,0]^3 + 2*x[1,0]*x[2,0]", GF5, rep.layout)
        once = reynolds(f, rep)
        assert reynolds(once, rep) == once
        assert rep.is_invariant(once)

    def test_modular_refused(self):
        inst = catalog.instance("char2-swap-n1")
        f = SparsePolynomial.variable(inst.field, inst.rep.layout, 0)
        with pytest.raises(ModularGroupOrder):
            reynolds(f, inst.rep)


class TestInvariantBasis:
    def test_trivial_full(self, reps):
        comp = invariant_basis(reps["trivial2"], 3)
        assert comp.dim == 4

    def test_z3_dims(self, reps):
        assert [invariant_basis(reps["z3"], d).dim for d in (1, 2, 3)] == [0, 0, 1]

    def test_s2_degree_two(self, reps):
        comp = invariant_basis(reps["s2"], 2)
        assert comp.dim == 2
        # canonical basis rows: x^2 + y^2 and xy
        assert comp.basis.row_vectors() == [[1, 0, 1], [0, 1, 0]]

    def test_methods_agree(self, reps):
        for rep in reps.values():
            for d in range(1, 5):
                a = invariant_basis(rep, d, method="kernel")
                b = invariant_basis(rep, d, method="reynolds")
                assert a.basis == b.basis

    def test_kernel_method_in_modular_case(self):
        inst = catalog.instance("char2-swap-n1")
        comp = invariant_basis(inst.rep, 2)
        # degree-2 invariants of the swap in char 2: x^2+y^2, xy; and x^2+y^2=(x+y)^2
        assert comp.dim == 2


class TestTrace:
    def test_trivial(self, reps):
        assert invariant_dim_by_trace(reps["trivial2"], 2) == 3 % 5

    def test_z3(self, reps):
        assert invariant_dim_by_trace(reps["z3"], 3) == 1
        assert invariant_dim_by_trace(reps["z3"], 2) == 0

    def test_matches_rank_mod_p(self, reps):
        for rep in reps.values():
            fld = rep.group.field
            for d in range(1, 5):
                assert invariant_dim_by_trace(rep, d) == fld.from_int(
                    invariant_basis(rep, d).dim
                )


class TestLedger:
    def test_trivial_generators(self, reps):
        ledger = minimal_generators_up_to(reps["trivial2"], 2)
        assert ledger.beta == 1
        assert [render_polynomial(g) for g in ledger.per_degree[1]] == ["x[1,0]", "x[2,0]"]
        assert ledger.per_degree[2] == []

    def test_z3_single_generator(self, reps):
        ledger = minimal_generators_up_to(reps["z3"], 3)
        assert ledger.beta == 3
        assert ledger.counts() == {3: 1}

    def test_v4(self, reps):
        ledger = minimal_generators_up_to(reps["v4"], 4)
        assert ledger.beta == 2
        assert sorted(render_polynomial(g) for g in ledger.per_degree[2]) == [
            "x[1,0]^2",
            "x[2,0]^2",
        ]
        assert not ledger.per_degree[3] and not ledger.per_degree[4]

    def test_generators_are_invariant(self, reps):
        for rep in reps.values():
            ledger = minimal_generators_up_to(rep, rep.group.order or 1)
            for gens in ledger.per_degree.values():
                for g in gens:
                    assert rep.is_invariant(g)

    def test_regeneration(self, reps):
        for rep in reps.values():
            b, ledger = beta(rep)
            ok, profile = generates_invariants_up_to(rep, ledger.generators(), rep.group.order)
            assert ok, profile


class TestBeta:
    def test_examples(self, reps):
        assert beta(reps["s2"])[0] == 2
        assert beta(reps["z3"])[0] == 3
        assert beta(reps["trivial2"])[0] == 1

    def test_s3_and_z4(self):
        assert beta(catalog.instance("s3-gf7").rep)[0] == 3
        b, ledger = beta(catalog.instance("z4-2dim-gf7").rep)
        assert b == 4 and ledger.counts() == {2: 1, 4: 2}

    def test_noether_bound_catalog(self):
        for inst in catalog.nonmodular_instances():
            b, ledger = beta(inst.rep)
            assert b <= inst.group.order
            assert ledger.complete
            if inst.faithful_character:
                assert b == inst.group.order

    def test_modular_beta_refused(self):
        inst = catalog.instance("char2-swap-n1")
        with pytest.raises(ModularGroupOrder):
            beta(inst.rep)
        ledger = minimal_generators_up_to(inst.rep, 3)
        assert not ledger.complete

    def test_graded_scaling_bound(self):
        # doubling every variable degree doubles the generator degrees,
        # so the composite bound beta <= bound(G) * beta(A) holds with
        # beta(A) = 2 for the squared grading
        for name in ("s2-gf5", "klein4-gf5", "z3-gf7", "s3-gf7"):
            inst = catalog.instance(name)
            b, _ = beta(inst.rep)
            assert 2 * b <= beta_k_upper_bound(inst.group) * 2

    def test_beta_adjoined_ring(self):
        sgn = generate_group([DenseMatrix.from_rows(GF5, [[-1]])], name="z2sign")
        ag = adjoin_group_variables(natural_representation(sgn))
        b, ledger = beta(ag)
        assert b == 2
        assert ledger.counts() == {1: 1, 2: 3}


class TestModularPaths:
    def test_reynolds_method_refused_in_modular_case(self):
        inst = catalog.instance("char2-swap-n1")
        with pytest.raises(ModularGroupOrder):
            minimal_generators_up_to(inst.rep, 2, method="reynolds")

    def test_kernel_ledger_runs_in_modular_case(self):
        inst = catalog.instance("char2-swap-n1")
        ledger = minimal_generators_up_to(inst.rep, 3)
        assert ledger.per_degree[1] and not ledger.complete
