from __future__ import annotations

import json

import pytest

from finvar import catalog
from finvar.cli import main
from finvar.errors import FinvarError


class TestCatalog:
    def test_all_builtins_load(self):
        for inst in catalog.all_instances():
            assert inst.group.order >= 1
            assert inst.rep.action[0].is_identity()

    def test_orders(self):
        expected = {"trivial": 1, "z2": 2, "s2": 2, "z3": 3, "z4": 4, "klein4": 4, "s3": 6, "char2": 2}
        for inst in catalog.all_instances():
            assert inst.group.order == expected[inst.family]

    def test_modularity_flags(self):
        assert catalog.instance("char2-swap-n2").modular
        assert not catalog.instance("z3-gf7").modular

    def test_unknown_instance(self):
        with pytest.raises(FinvarError):
            catalog.instance("e8-gf1009")

    def test_instance_json_roundtrip(self, tmp_path):
        path = tmp_path / "v4.json"
        path.write_text(
            json.dumps(
                {
                    "field": {"prime": 5},
                    "generators": [[[-1, 0], [0, 1]], [[1, 0], [0, -1]]],
                    "name": "klein-from-file",
                }
            )
        )
        inst = catalog.load_instance_file(str(path))
        assert inst.group.order == 4
        assert inst.name == "klein-from-file"

    def test_char2_generator_set(self):
        inst = catalog.instance("char2-swap-n2")
        gens = catalog.char2_generators(inst, 3)
        assert all(inst.rep.is_invariant(g) for g in gens)
        # |a| in 1..3 over 2 variables gives 2 + 3 + 4 = 9 sums, plus 2 products
        assert len(gens) == 11


class TestCli:
    def test_beta_exit_codes(self, capsys):
        assert main(["beta", "--instance", "z3-gf7"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["beta"] == 3 and out["complete"]

    def test_beta_trivial_and_klein(self, capsys):
        assert main(["beta", "--instance", "trivial-2var"]) == 0
        assert json.loads(capsys.readouterr().out)["beta"] == 1
        assert main(["beta", "--instance", "klein4-gf5"]) == 0
        assert json.loads(capsys.readouterr().out)["beta"] == 2

    def test_beta_modular_gate(self, capsys):
        assert main(["beta", "--instance", "char2-swap-n1"]) == 2
        assert main(["beta", "--instance", "char2-swap-n1", "--modular-ok", "--cap", "3"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert not out["complete"]
        assert "note" in out

    def test_eta_commands(self, capsys, tmp_path):
        assert main(["eta", "--instance", "z3-gf7"]) == 0
        assert json.loads(capsys.readouterr().out)["eta"] == 3
        assert main(["eta", "--instance", "trivial-1var"]) == 0
        assert json.loads(capsys.readouterr().out)["eta"] == 1
        gens = tmp_path / "gens.json"
        gens.write_text(json.dumps({"builtin": "char2", "cap": 6}))
        assert main(["eta", "--instance", "char2-swap-n2", "--gens-file", str(gens), "--cap", "6"]) == 0
        assert json.loads(capsys.readouterr().out)["eta"] == 3

    def test_eta_modular_without_gens(self, capsys):
        assert main(["eta", "--instance", "char2-swap-n1"]) == 2

    def test_eta_explicit_generator_strings(self, capsys, tmp_path):
        gens = tmp_path / "g.json"
        gens.write_text(json.dumps({"generators": ["x[1,0]^3"]}))
        assert main(["eta", "--instance", "z3-gf7", "--gens-file", str(gens), "--cap", "3"]) == 0
        assert json.loads(capsys.readouterr().out)["eta"] == 3

    def test_polarize(self, capsys):
        assert main(["polarize", "--p", "5", "--target", "[[1,2]]"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["replay"]["reproduced"]
        assert main(["polarize", "--p", "3", "--target", "[[0,3]]"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert [s["kind"] for s in out["steps"]] == ["source"]
        assert main(["polarize", "--p", "3", "--target", "[[1,2]]"]) == 4

    def test_polarize_replay_serialized_certificate(self, capsys, tmp_path):
        cert_file = tmp_path / "cert.json"
        assert main(["polarize", "--p", "5", "--target", "[[2,2]]", "--json-out", str(cert_file)]) == 0
        capsys.readouterr()
        assert main(["polarize", "--replay", str(cert_file)]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["replay"]["reproduced"]
        assert out["target"] == [[2, 2]]

    def test_verify_suite(self, capsys, tmp_path):
        out_file = tmp_path / "rows.json"
        assert main(["verify", "cor3.4", "--json-out", str(out_file)]) == 0
        rows = json.loads(out_file.read_text())["rows"]
        assert rows and all(r["holds"] for r in rows)

    def test_verify_unknown_suite(self, capsys):
        assert main(["verify", "no-such-suite"]) == 1

    def test_verify_grid_option(self, capsys):
        assert main(["verify", "thm5.1", "--grid", "l=1 p=3 nmax=+1"]) == 0

    def test_stable_output_is_deterministic(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["verify", "cor2.2", "--stable", "--json-out", str(a)]) == 0
        capsys.readouterr()
        assert main(["verify", "cor2.2", "--stable", "--json-out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_instance_from_file(self, capsys, tmp_path):
        path = tmp_path / "inst.json"
        path.write_text(
            json.dumps({"field": {"prime": 7}, "generators": [[[2]]], "name": "z3f"})
        )
        assert main(["beta", "--instance", str(path)]) == 0
        assert json.loads(capsys.readouterr().out)["beta"] == 3


class TestBoundReport:
    def test_bundle(self):
        from finvar.verify import instance_bound_report

        report = instance_bound_report("klein4-gf5")
        js = report.to_json()
        assert js["beta"] == 2 and js["eta"] == 3
        assert js["generator_counts"] == {"2": 2}
        assert js["all_hold"]

    def test_overflow_maps_to_exit_3(self, monkeypatch):
        import finvar.cli as cli
        from finvar.errors import DimensionOverflow

        def boom(*args, **kwargs):
            raise DimensionOverflow("forced")

        monkeypatch.setattr(cli, "minimal_generators_up_to", boom)
        assert main(["beta", "--instance", "z2-gf5"]) == 3

    def test_beta_json_deterministic(self, capsys):
        assert main(["beta", "--instance", "s3-gf7"]) == 0
        first = capsys.readouterr().out
        assert main(["beta", "--instance", "s3-gf7"]) == 0
        assert capsys.readouterr().out == first
