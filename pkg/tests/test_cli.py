"""CLI tests: subcommands, exit codes, report round-trips, determinism."""

import json
import subprocess
import sys

import pytest

from diagbase.cli import main, parse_t_name
from diagbase.report import checks_from_csv


def run_cli(args):
    return main(args)


def write_config(tmp_path, doc, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


A5_SOCLE = {"T": {"family": "Alt", "n": 5}, "k": 2, "preset": "socle"}


def test_parse_t_name():
    assert parse_t_name("A5") == ("Alt", 5)
    assert parse_t_name("Alt(6)") == ("Alt", 6)
    assert parse_t_name("L2_8") == ("PSL2", 8)
    assert parse_t_name("L2(13)") == ("PSL2", 13)


def test_catalog_command(tmp_path, capsys):
    assert run_cli(["catalog"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert any(g["name"] == "Alt(5)" for g in out["groups"])


def test_base_command(tmp_path):
    cfg = write_config(tmp_path, A5_SOCLE)
    out = str(tmp_path / "report.json")
    assert run_cli(["base", "--config", cfg, "--json", out]) == 0
    doc = json.loads(open(out).read())
    assert doc["b"] == 3 and doc["greedy_sizes"] == [3] and doc["match"]
    assert doc["order"] == 3600 and doc["omega"] == 60
    assert (tmp_path / "report.json.manifest.json").exists()


def test_base_determinism(tmp_path):
    cfg = write_config(tmp_path, A5_SOCLE)
    o1, o2 = str(tmp_path / "r1.json"), str(tmp_path / "r2.json")
    run_cli(["base", "--config", cfg, "--json", o1])
    run_cli(["base", "--config", cfg, "--json", o2])
    d1, d2 = json.load(open(o1)), json.load(open(o2))
    d1.pop("elapsed_ms"), d2.pop("elapsed_ms")  # timings live in the manifest
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)


def test_partition_sim_csv(tmp_path):
    out = str(tmp_path / "sim.csv")
    code = run_cli(["partition", "sim", "--n", "60", "--k-from", "61", "--k-to", "80",
                    "--q", "both", "--csv", out])
    assert code == 0
    rows = open(out).read().strip().splitlines()
    assert rows[0] == "n,k,q,ell,sim,thm_reading,prop_reading,agree_prop,agree_thm"
    assert len(rows) == 1 + 20 * 2


def test_rc_command(tmp_path):
    cfg = write_config(tmp_path, {"T": {"family": "PSL2", "q": 8}, "k": 2, "preset": "socle"})
    out = str(tmp_path / "rc.json")
    assert run_cli(["rc", "--config", cfg, "--witness", "thm1.3", "--json", out]) == 0
    doc = json.load(open(out))
    assert doc["certified_lower"] == 4
    assert doc["bounds"] == {"lower": 4, "upper": 4, "upper_source": "I_plus_1",
                             "search_length_bound": None, "note": "exact"}
    assert doc["witness"]["transporters"]


def test_k2_qtilde_command(capsys):
    assert run_cli(["k2", "qtilde", "--T", "A5", "--y-class", "5A"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["qtilde"] == "10"
    assert doc["dominates"]


def test_k2_criterion_command(capsys):
    assert run_cli(["k2", "criterion", "--family", "PSp", "--m", "3", "--q", "5"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["holds"] and doc["c"] == 126


def test_k2_procedure_command(capsys):
    assert run_cli(["k2", "procedure-A", "--T", "L2_8"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["success"] and doc["inclusion_ok"]


def test_verify_suite_and_csv_roundtrip(tmp_path):
    out = str(tmp_path / "suite.json")
    csv_out = str(tmp_path / "suite.csv")
    code = run_cli(["verify", "thm1.1-k2", "--T", "A5", "--json", out, "--csv", csv_out])
    assert code == 0
    doc = json.load(open(out))
    assert doc["passed"] and doc["n_checks"] == 5
    rows = checks_from_csv(csv_out)
    assert len(rows) == 5 and all(r["pass"] for r in rows)


def test_verify_k3_suite(capsys):
    assert run_cli(["verify", "thm1.1-k3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["n_checks"] == 3 and doc["passed"]


def test_report_roundtrip(tmp_path):
    out = str(tmp_path / "suite.json")
    run_cli(["verify", "thm1.1-k2", "--T", "A5", "--json", out])
    csv_out = str(tmp_path / "conv.csv")
    assert run_cli(["report", "--in", out, "--format", "csv", "--out", csv_out]) == 0
    rows = checks_from_csv(csv_out)
    assert len(rows) == 5
    back = str(tmp_path / "back.json")
    assert run_cli(["report", "--in", csv_out, "--format", "json", "--out", back]) == 0
    doc = json.load(open(back))
    assert doc["n_checks"] == 5


def test_resource_exit_code(tmp_path):
    cfg = write_config(tmp_path, {"T": {"family": "Alt", "n": 5}, "k": 3, "preset": "socle"})
    code = run_cli(["--cap-omega", "100", "base", "--config", cfg])
    assert code == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "diagbase.cli", "catalog"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "Alt(5)" in proc.stdout
