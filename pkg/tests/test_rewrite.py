from __future__ import annotations

import pytest

from finvar.errors import DegreeOutOfRange
from finvar.polyring import VariableLayout, monomials_of_degree
from finvar.rewrite import _builder, certificate_from_json, rewrite_monomial


class TestExamples:
    def test_single_operator_certificate(self):
        cert = rewrite_monomial(((1, 2),), 5)
        assert cert.verify()
        steps = cert.to_json()["steps"]
        kinds = [s["kind"] for s in steps]
        assert kinds == ["source", "op", "scale"]
        assert steps[0]["matrix"] == [[0, 3]]
        assert steps[2]["value"] == 2  # inverse of 3 mod 5

    def test_base_case_empty_certificate(self):
        cert = rewrite_monomial(((0, 3),), 3)
        assert cert.verify()
        assert [s["kind"] for s in cert.to_json()["steps"]] == ["source"]

    def test_out_of_range(self):
        with pytest.raises(DegreeOutOfRange):
            rewrite_monomial(((1, 2),), 3)

    def test_missing_copy_is_trivial_in_any_degree(self):
        cert = rewrite_monomial(((3, 0),), 3)  # degree 3 > (p-1)*l = 2
        assert cert.verify()

    def test_accepts_exponent_tuple(self):
        cert = rewrite_monomial((1, 2), 5, ell=1)
        assert cert.target == ((1, 2),)


class TestSoundness:
    @pytest.mark.parametrize("ell,p", [(1, 3), (1, 5), (2, 3), (2, 5)])
    def test_exhaustive_grid(self, ell, p):
        layout = VariableLayout(ell, ell + 1)
        cache = _builder(p).replay_cache
        for d in range(0, (p - 1) * ell + 1):
            for mono in monomials_of_degree(layout, d):
                cert = rewrite_monomial(mono, p, ell=ell)
                assert cert.verify_shared(cache), mono

    def test_block_branch_three_dimensional(self):
        # the vanishing-coefficient split needs ell >= 3 to fire in range
        layout = VariableLayout(3, 4)
        cache = _builder(3).replay_cache
        n_block = 0
        for d in range(0, 7):
            for mono in monomials_of_degree(layout, d):
                cert = rewrite_monomial(mono, 3, ell=3)
                if any(s["kind"] == "block" for s in cert.to_json()["steps"]):
                    n_block += 1
                    assert cert.verify()
                else:
                    assert cert.verify_shared(cache)
        assert n_block > 0

    def test_sources_live_on_last_copies(self):
        for d in range(0, 5):
            for mono in monomials_of_degree(VariableLayout(2, 3), d):
                cert = rewrite_monomial(mono, 3, ell=2)
                for matrix in cert.source_terms():
                    assert all(row[0] == 0 for row in matrix)


class TestSerialization:
    def test_roundtrip(self):
        cert = rewrite_monomial(((1, 2),), 5)
        again = certificate_from_json(cert.to_json())
        assert again.verify()
        assert again.target == cert.target

    def test_roundtrip_deep(self):
        cert = rewrite_monomial(((2, 1, 1), (0, 2, 2)), 5)
        assert cert.verify()
        again = certificate_from_json(cert.to_json())
        assert again.verify()

    def test_scalings_are_explicit_residues(self):
        cert = rewrite_monomial(((2, 2, 2), (1, 1, 0)), 5)
        for step in cert.to_json()["steps"]:
            if step["kind"] == "scale":
                assert 0 <= step["value"] < 5
