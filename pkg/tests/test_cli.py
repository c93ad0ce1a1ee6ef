"""Exercise the command line entry point through main()."""

from __future__ import annotations

import json
import os

import pytest

from netmansim.cli import main


def write_scenario(tmp_path, name="local", **overrides):
    doc = {
        "name": name,
        "nodes": [1, 2],
        "links": [[1, 2, 1]],
        "central": 1,
        "m_max": 3,
        "params": {
            "s_req": 1,
            "s_res": 1,
            "num_vars": 1,
            "s_ma": 1,
            "d": 1,
            "ma_size": 1,
            "mda_size": 1,
            "ma_res": 1,
        },
        "events": [],
        "polling_counts": [1],
        "models": ["cs", "flatbed", "imasnm"],
    }
    doc.update(overrides)
    target = tmp_path / f"{name}.scenario.json"
    target.write_text(json.dumps(doc))
    return str(target)


class TestSimulate:
    def test_bundled_scenario_by_bare_name(self, capsys):
        assert main(["simulate", "--scenario", "reference18"]) == 0
        out = capsys.readouterr().out
        assert "110.22" in out
        assert "7355.74" in out
        assert "100352" in out

    def test_polling_override(self, capsys):
        code = main(
            ["simulate", "--scenario", "reference18", "--pollings", "1,10,20"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "2204.40" in out
        assert "5511.00" not in out

    def test_model_override_drops_columns(self, capsys):
        code = main(["simulate", "--scenario", "reference18", "--models", "cs"])
        assert code == 0
        out = capsys.readouterr().out
        assert "cost_cs_kb" in out
        assert "imasnm" not in out

    def test_include_deploy_changes_rows(self, capsys):
        base = main(["simulate", "--scenario", "reference18", "--pollings", "1"])
        plain = capsys.readouterr().out
        with_deploy = main(
            [
                "simulate",
                "--scenario",
                "reference18",
                "--pollings",
                "1",
                "--include-deploy",
            ]
        )
        loaded = capsys.readouterr().out
        assert base == with_deploy == 0
        assert "73.56" in plain
        # 73557.4 + 100352 = 173909.4 bytes, 173.91 Kb
        assert "173.91" in loaded

    def test_snapshots_flag_prints_history(self, capsys):
        code = main(
            ["simulate", "--scenario", "growth19", "--snapshots"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "snapshot" in out
        assert "after-first-split" in out

    def test_scenario_without_models_prints_tree(self, capsys):
        assert main(["simulate", "--scenario", "growth19"]) == 0
        out = capsys.readouterr().out
        assert "1.3.1.1" in out

    def test_csv_output(self, capsys, tmp_path):
        target = tmp_path / "out.csv"
        code = main(
            [
                "simulate",
                "--scenario",
                "reference18",
                "--pollings",
                "1",
                "--csv",
                str(target),
            ]
        )
        assert code == 0
        lines = target.read_text().splitlines()
        assert lines[0] == "polling,cost_cs_kb,cost_imasnm_kb"
        assert lines[1] == "1,110.22,73.56"

    def test_csv_target_in_missing_directory_is_io_failure(
        self, capsys, tmp_path
    ):
        target = tmp_path / "absent" / "out.csv"
        code = main(
            ["simulate", "--scenario", "reference18", "--csv", str(target)]
        )
        assert code == 2
        assert capsys.readouterr().err != ""

    def test_local_scenario_file(self, capsys, tmp_path):
        path = write_scenario(tmp_path)
        assert main(["simulate", "--scenario", path]) == 0
        assert "cost_imasnm_kb" in capsys.readouterr().out

    def test_bad_models_argument(self, capsys):
        code = main(
            ["simulate", "--scenario", "reference18", "--models", "bogus"]
        )
        assert code == 1
        assert "--models" in capsys.readouterr().err

    def test_bad_pollings_argument(self, capsys):
        for value in ("-1", "x", ""):
            code = main(
                ["simulate", "--scenario", "reference18", "--pollings", value]
            )
            assert code == 1
            assert "--pollings" in capsys.readouterr().err

    def test_malformed_file_is_validation_failure(self, capsys, tmp_path):
        bad = tmp_path / "bad.scenario.json"
        bad.write_text("{broken")
        assert main(["simulate", "--scenario", str(bad)]) == 1
        assert capsys.readouterr().err != ""

    def test_unknown_bundled_name_is_io_failure(self, capsys):
        assert main(["simulate", "--scenario", "nonesuch"]) == 2
        assert "nonesuch" in capsys.readouterr().err

    def test_missing_path_is_io_failure(self, capsys):
        missing = os.path.join("no", "such", "file.scenario.json")
        assert main(["simulate", "--scenario", missing]) == 2
        assert capsys.readouterr().err != ""


class TestValidate:
    def test_ok(self, capsys, tmp_path):
        path = write_scenario(tmp_path)
        assert main(["validate", "--scenario", path]) == 0
        out = capsys.readouterr().out
        assert out.startswith("ok: local")

    def test_bundled(self, capsys):
        assert main(["validate", "--scenario", "reference18"]) == 0
        assert "reference18" in capsys.readouterr().out

    def test_malformed(self, capsys, tmp_path):
        bad = tmp_path / "bad.scenario.json"
        bad.write_text(json.dumps({"name": "x"}))
        assert main(["validate", "--scenario", str(bad)]) == 1
        assert capsys.readouterr().err != ""


class TestExplain:
    def test_prints_domain_tree(self, capsys):
        assert main(["explain", "--scenario", "growth19"]) == 0
        out = capsys.readouterr().out
        assert "1.3.1.1" in out
        assert "host" in out

    def test_indentation_reflects_depth(self, capsys):
        main(["explain", "--scenario", "growth19"])
        lines = capsys.readouterr().out.splitlines()
        by_id = {}
        for line in lines:
            stripped = line.lstrip()
            if stripped and stripped[0].isdigit():
                by_id[stripped.split()[0]] = len(line) - len(stripped)
        assert by_id["1"] < by_id["1.3"] < by_id["1.3.1"] < by_id["1.3.1.1"]
