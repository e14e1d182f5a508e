from __future__ import annotations

import pytest

from finvar import catalog
from finvar.errors import CapExhausted, FinvarError, ModularGroupOrder
from finvar.fields import Field
from finvar.grouprep import all_subgroups, cosets
from finvar.nullcone import (
    check_beta_le_eta,
    check_eta_le_beta_AG,
    check_index_inequality,
    check_phi_identity,
    default_ideal_generators,
    eta,
    hilbert_ideal_component,
)
from finvar.polyring import SparsePolynomial, parse_polynomial

GF5 = Field.gf(5)
GF7 = Field.gf(7)


class TestIdealSlices:
    def test_z3_slices(self):
        rep = catalog.instance("z3-gf7").rep
        x3 = parse_polynomial("x[1,0]^3", GF7, rep.layout)
        assert hilbert_ideal_component(rep, [x3], 3).full
        assert not hilbert_ideal_component(rep, [x3], 2).full

    def test_trivial_full_at_one(self):
        rep = catalog.instance("trivial-2var").rep
        gens = [
            parse_polynomial("x[1,0]", GF5, rep.layout),
            parse_polynomial("x[2,0]", GF5, rep.layout),
        ]
        assert hilbert_ideal_component(rep, gens, 1).full

    def test_v4_slices(self):
        rep = catalog.instance("klein4-gf5").rep
        gens = [
            parse_polynomial("x[1,0]^2", GF5, rep.layout),
            parse_polynomial("x[2,0]^2", GF5, rep.layout),
        ]
        assert not hilbert_ideal_component(rep, gens, 2).full  # xy missing
        assert hilbert_ideal_component(rep, gens, 3).full

    def test_ideal_property(self):
        rep = catalog.instance("klein4-gf5").rep
        gens = default_ideal_generators(rep)
        comp2 = hilbert_ideal_component(rep, gens, 2)
        comp3 = hilbert_ideal_component(rep, gens, 3)
        from finvar.polyring import component_to_vector, vector_to_polynomial

        for row in comp2.basis.row_vectors():
            f = vector_to_polynomial(row, GF5, rep.layout, 2)
            for v in range(2):
                shifted = f * SparsePolynomial.variable(GF5, rep.layout, v)
                assert comp3.basis.contains(component_to_vector(shifted, 3))

    def test_rejects_bad_generators(self):
        rep = catalog.instance("klein4-gf5").rep
        non_invariant = parse_polynomial("x[1,0]", GF5, rep.layout)
        with pytest.raises(FinvarError):
            hilbert_ideal_component(rep, [non_invariant], 2)
        non_homogeneous = parse_polynomial("x[1,0]^2 + x[1,0]^4", GF5, rep.layout)
        with pytest.raises(FinvarError):
            hilbert_ideal_component(rep, [non_homogeneous], 4)


class TestEta:
    def test_examples(self):
        assert eta(catalog.instance("trivial-1var").rep).eta == 1
        assert eta(catalog.instance("z3-gf7").rep).eta == 3
        assert eta(catalog.instance("klein4-gf5").rep).eta == 3

    def test_default_cap_is_group_order(self):
        report = eta(catalog.instance("s3-gf5").rep)
        assert report.cap_used == 6
        assert report.eta == 4
        # fullness is monotone above eta
        assert all(report.per_degree[d] for d in range(report.eta, 7))

    def test_modular_requires_generators(self):
        inst = catalog.instance("char2-swap-n2")
        with pytest.raises(ModularGroupOrder):
            eta(inst.rep)
        with pytest.raises(ValueError):
            eta(inst.rep, gens=catalog.char2_generators(inst, 3))

    def test_char2_family(self):
        for n in (1, 2, 3):
            inst = catalog.instance(f"char2-swap-n{n}")
            report = eta(inst.rep, gens=catalog.char2_generators(inst, n + 2), cap=n + 2)
            assert report.eta == n + 1
            assert report.generator_source == "user-supplied"

    def test_cap_exhausted(self):
        inst = catalog.instance("char2-swap-n2")
        with pytest.raises(CapExhausted):
            eta(inst.rep, gens=catalog.char2_generators(inst, 2), cap=2)


class TestIndexInequality:
    def test_v4_subgroup(self):
        inst = catalog.instance("klein4-gf5")
        members = [i for i, m in enumerate(inst.group.elements) if m.entry(1, 1) == 1]
        rec = check_index_inequality(inst.rep, cosets(inst.group, members))
        assert rec.holds and rec.lhs == 3 and rec.rhs == 4
        assert rec.detail == {"eta_G": 3, "eta_H": 2, "index": 2}

    def test_whole_group_trivial(self):
        inst = catalog.instance("s2-gf5")
        rec = check_index_inequality(inst.rep, cosets(inst.group, [0, 1]))
        assert rec.holds and rec.lhs == rec.rhs

    def test_trivial_subgroup_is_noether(self):
        inst = catalog.instance("z3-gf7")
        rec = check_index_inequality(inst.rep, cosets(inst.group, [0]))
        assert rec.holds
        assert rec.rhs == inst.group.order  # eta of trivial group is 1

    def test_all_catalog_subgroups(self):
        for name in ("s2-gf5", "klein4-gf5", "z4-gf5", "s3-gf7"):
            inst = catalog.instance(name)
            for members in all_subgroups(inst.group):
                index = inst.group.order // len(members)
                if index % inst.field.p == 0:
                    continue
                assert check_index_inequality(inst.rep, cosets(inst.group, members)).holds


class TestPhiIdentity:
    def test_s2_single_variable(self):
        inst = catalog.instance("s2-gf5")
        handle = cosets(inst.group, [0])
        x = SparsePolynomial.variable(GF5, inst.rep.layout, 0)
        rec = check_phi_identity(inst.rep, handle, [x, x])
        assert rec.holds
        assert rec.detail == {
            "phi_zero": True,
            "phi_S_in_ideal": True,
            "product_in_ideal": True,
        }

    def test_zero_samples(self):
        inst = catalog.instance("s2-gf5")
        handle = cosets(inst.group, [0])
        zero = SparsePolynomial.zero(GF5, inst.rep.layout)
        assert check_phi_identity(inst.rep, handle, [zero, zero]).holds

    def test_v4_index_two(self):
        inst = catalog.instance("klein4-gf5")
        members = [i for i, m in enumerate(inst.group.elements) if m.entry(1, 1) == 1]
        handle = cosets(inst.group, members)
        # y is H-invariant of degree 1
        y = parse_polynomial("x[2,0]", GF5, inst.rep.layout)
        y2 = parse_polynomial("x[2,0]^2", GF5, inst.rep.layout)
        for samples in ([y, y], [y, y2], [y2, y2]):
            assert check_phi_identity(inst.rep, handle, samples).holds

    def test_rejects_non_invariant_sample(self):
        inst = catalog.instance("klein4-gf5")
        members = [i for i, m in enumerate(inst.group.elements) if m.entry(1, 1) == 1]
        handle = cosets(inst.group, members)
        x = parse_polynomial("x[1,0]", GF5, inst.rep.layout)  # not H-invariant
        with pytest.raises(FinvarError):
            check_phi_identity(inst.rep, handle, [x, x])


class TestComparisonLemmas:
    def test_beta_le_eta_examples(self):
        assert check_beta_le_eta(catalog.instance("z3-gf7").rep).detail == {
            "beta": 3,
            "eta": 3,
        }
        assert check_beta_le_eta(catalog.instance("klein4-gf5").rep).detail == {
            "beta": 2,
            "eta": 3,
        }
        assert check_beta_le_eta(catalog.instance("trivial-1var").rep).detail == {
            "beta": 1,
            "eta": 1,
        }

    def test_eta_le_beta_ag_examples(self):
        assert check_eta_le_beta_AG(catalog.instance("trivial-1var").rep).detail == {
            "eta": 1,
            "beta_AG": 1,
        }
        assert check_eta_le_beta_AG(catalog.instance("z2-gf5").rep).detail == {
            "eta": 2,
            "beta_AG": 2,
        }
        assert check_eta_le_beta_AG(catalog.instance("z3-gf7").rep).detail == {
            "eta": 3,
            "beta_AG": 3,
        }
