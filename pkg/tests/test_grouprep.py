from __future__ import annotations

import pytest

from finvar.errors import DecompositionUnavailable, FinvarError, GroupTooLarge, NotASubgroup
from finvar.fields import Field
from finvar.grouprep import (
    Representation,
    adjoin_group_variables,
    all_subgroups,
    character_decomposition,
    copies_representation,
    cosets,
    direct_sum,
    generate_group,
    is_abelian,
    is_cyclic,
    natural_representation,
    regular_representation,
    restrict_representation,
    subgroup_as_group,
    sum_with_copies,
)
from finvar.linalg import DenseMatrix
from finvar.polyring import SparsePolynomial, VariableLayout, parse_polynomial

GF5 = Field.gf(5)
GF7 = Field.gf(7)


def s2():
    return generate_group([DenseMatrix.from_rows(GF5, [[0, 1], [1, 0]])], name="s2")


def z3():
    return generate_group([DenseMatrix.from_rows(GF7, [[2]])], name="z3")


def klein4():
    return generate_group(
        [DenseMatrix.from_rows(GF5, [[-1, 0], [0, 1]]), DenseMatrix.from_rows(GF5, [[1, 0], [0, -1]])],
        name="v4",
    )


class TestGeneration:
    def test_trivial(self):
        g = generate_group([DenseMatrix.identity(GF5, 2)])
        assert g.order == 1

    def test_involution(self):
        assert s2().order == 2

    def test_multiplicative_order(self):
        # 2 has order 3 mod 7
        assert z3().order == 3

    def test_cap(self):
        with pytest.raises(GroupTooLarge):
            generate_group([DenseMatrix.from_rows(Field.gf(101), [[3]])], cap=10)

    def test_cayley_consistency(self):
        g = klein4()
        for a in range(g.order):
            for b in range(g.order):
                prod = g.elements[a].mul(g.elements[b])
                assert prod.entries == g.elements[g.cayley[a][b]].entries
        for a in range(g.order):
            assert g.cayley[a][g.inverses[a]] == 0


class TestCosets:
    def test_whole_group(self):
        g = s2()
        h = cosets(g, [0, 1])
        assert h.transversal == (0,)

    def test_trivial_subgroup(self):
        g = klein4()
        h = cosets(g, [0])
        assert len(h.transversal) == 4

    def test_index_two(self):
        g = klein4()
        members = [i for i, m in enumerate(g.elements) if m.entry(1, 1) == 1]
        h = cosets(g, members)
        assert h.index_in_parent == 2
        # transversal translates of H partition G
        seen = set()
        for t in h.transversal:
            for m in h.member_indices:
                x = g.cayley[t][m]
                assert x not in seen
                seen.add(x)
        assert seen == set(range(g.order))

    def test_not_a_subgroup(self):
        g = klein4()
        with pytest.raises(NotASubgroup):
            cosets(g, [0, 1, 2])


class TestSubgroups:
    def test_klein4_count(self):
        assert len(all_subgroups(klein4())) == 5

    def test_s3_count(self):
        s3 = generate_group(
            [DenseMatrix.from_rows(GF7, [[0, -1], [1, -1]]), DenseMatrix.from_rows(GF7, [[0, 1], [1, 0]])],
            name="s3",
        )
        assert len(all_subgroups(s3)) == 6

    def test_subgroup_as_group(self):
        g = klein4()
        members = all_subgroups(g)[1]
        sub = subgroup_as_group(g, members)
        assert sub.order == len(members)
        assert sub.elements[0].is_identity()


class TestCyclic:
    def test_examples(self):
        assert is_cyclic(z3())
        assert is_cyclic(s2())
        assert not is_cyclic(klein4())


class TestRepresentations:
    def test_regular_representation_shape(self):
        reg = regular_representation(z3())
        assert reg.dim == 3
        for m in reg.action:
            rows = m.rows()
            for r in rows:
                assert sum(r) == 1
            for j in range(3):
                assert sum(m.entry(i, j) for i in range(3)) == 1

    def test_regular_trivial_group(self):
        g = generate_group([DenseMatrix.identity(GF5, 1)])
        reg = regular_representation(g)
        assert reg.dim == 1 and reg.action[0].is_identity()

    def test_inverse_action(self):
        rep = natural_representation(klein4())
        for g in range(rep.group.order):
            gi = rep.group.inverses[g]
            assert rep.action[g].mul(rep.action[gi]).is_identity()

    def test_adjoin_group_variables(self):
        sgn = generate_group([DenseMatrix.from_rows(GF5, [[-1]])], name="z2sign")
        rep = natural_representation(sgn)
        ag = adjoin_group_variables(rep)
        assert ag.layout.nvars == 3
        t = SparsePolynomial.variable(GF5, ag.layout, 0)
        x1 = SparsePolynomial.variable(GF5, ag.layout, 1)
        xs = SparsePolynomial.variable(GF5, ag.layout, 2)
        assert ag.act(1, t) == -t
        assert ag.act(1, x1) == xs
        assert ag.act(1, xs) == x1
        # original block action preserved exactly
        assert ag.act(1, t * t) == t * t

    def test_copies_and_direct_sum(self):
        sgn = generate_group([DenseMatrix.from_rows(GF5, [[-1]])], name="z2sign")
        rep = natural_representation(sgn)
        two = copies_representation(rep, 2)
        assert two.layout.copies == 2
        assert two.action[1].entry(0, 0) == 4 and two.action[1].entry(1, 1) == 4
        assert copies_representation(rep, 1).action == rep.action
        g = s2()
        reg = regular_representation(g)
        sgn_of_g = Representation(
            g,
            VariableLayout(1, 1),
            (DenseMatrix.identity(GF5, 1), DenseMatrix.from_rows(GF5, [[-1]])),
        )
        summed = direct_sum(reg, sgn_of_g)
        assert summed.dim == 3

    def test_sum_with_copies_layout(self):
        sgn = natural_representation(generate_group([DenseMatrix.from_rows(GF7, [[-1]])], name="z2"))
        reg = regular_representation(sgn.group)
        w = sum_with_copies(reg, sgn, 2)
        assert w.layout.base_dim == 1 and w.layout.copies == 2 and w.layout.extra_vars == 2

    def test_homomorphism_validation(self):
        g = s2()
        bad = (DenseMatrix.identity(GF5, 2), DenseMatrix.from_rows(GF5, [[1, 1], [0, 1]]))
        with pytest.raises(FinvarError):
            Representation(g, VariableLayout(2, 1), bad)

    def test_restriction(self):
        g = klein4()
        members = [i for i, m in enumerate(g.elements) if m.entry(1, 1) == 1]
        rep_h = restrict_representation(natural_representation(g), members)
        assert rep_h.group.order == 2
        f = parse_polynomial("x[2,0]", GF5, rep_h.layout)
        assert rep_h.is_invariant(f)


class TestCharacterDecomposition:
    def test_swap_rep(self):
        blocks = character_decomposition(natural_representation(s2()))
        assert len(blocks) == 2
        chars = {b.character for b in blocks}
        assert (1, 1) in chars and (1, 4) in chars

    def test_z3_regular(self):
        blocks = character_decomposition(regular_representation(z3()))
        assert len(blocks) == 3
        assert all(b.multiplicity == 1 for b in blocks)

    def test_requires_roots_of_unity(self):
        z3q = generate_group([DenseMatrix.from_rows(Field.rationals(), [[0, -1], [1, -1]])], name="z3q")
        with pytest.raises(DecompositionUnavailable):
            character_decomposition(natural_representation(z3q))

    def test_nonabelian_rejected(self):
        s3 = generate_group(
            [DenseMatrix.from_rows(GF7, [[0, -1], [1, -1]]), DenseMatrix.from_rows(GF7, [[0, 1], [1, 0]])],
        )
        assert not is_abelian(s3)
        with pytest.raises(DecompositionUnavailable):
            character_decomposition(natural_representation(s3))

    def test_eigencoordinates_diagonalize(self):
        rep = natural_representation(s2())
        for block in character_decomposition(rep):
            for vec in block.vectors:
                # coefficient vectors transform by v -> M v
                for g in range(rep.group.order):
                    m = rep.action[g]
                    img = [
                        sum(m.entry(r, c) * vec[c] for c in range(2)) % 5
                        for r in range(2)
                    ]
                    lam = block.character[g]
                    assert img == [(lam * x) % 5 for x in vec]


def test_singular_generator_rejected():
    from finvar.errors import SingularMatrix

    with pytest.raises(SingularMatrix):
        generate_group([DenseMatrix.from_rows(GF5, [[1, 2], [2, 4]])])
