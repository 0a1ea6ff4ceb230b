"""CLI frontend: frozen example outputs, exit codes, determinism, formats."""

import io
import json

import pytest

from bhlab.cli import RunConfig, UsageError, run_command
from bhlab.kl import kl_coset_moment


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(argv):
    code, out, err = run(argv)
    assert err == "", err
    return code, json.loads(out)


def test_gk_example_frozen():
    code, doc = run_json(["qexp", "gk", "--k", "2", "--qprec", "5"])
    assert code == 0
    assert doc["command"] == "qexp gk"
    assert doc["modulus"] == "exact"
    assert doc["coefficients"] == ["-1/12", "2", "6", "8", "14", "12"]


def test_kl_table_example_frozen():
    code, doc = run_json(["measure", "kl", "--p", "5", "--n", "1",
                          "--c", "2", "--N", "3"])
    assert code == 0
    assert doc["level"] == 1
    assert doc["values"] == ["0", "2", "4", "-4", "-2"]


def test_residue_example_passes():
    code, doc = run_json(["verify", "residue", "--p", "5", "--n", "3"])
    assert code == 0
    assert doc["status"] == "pass"
    assert doc["results"][0]["check"] == "zeta-residue"
    assert doc["results"][0]["modulus"] == "5^3"


def test_byte_identical_reruns():
    for argv in (["verify", "kl-interpolation", "--k", "3"],
                 ["qexp", "phi", "--a", "2", "--qprec", "8"],
                 ["verify", "limit", "--n", "2", "--qprec", "30"]):
        _, first, _ = run(argv)
        _, second, _ = run(argv)
        assert first == second
        assert "time" not in first and "elapsed" not in first


def test_usage_errors_exit_two():
    bad = [
        ["nonsense"],
        ["qexp", "gk"],                       # missing weight
        ["qexp", "gk", "--k", "0"],           # weight below range
        ["sigma", "--p", "6"],                # composite p
        ["sigma", "--p", "5", "--N", "10"],   # N not coprime to p
        ["oracle", "cm-period", "--p", "7"],  # split-prime setup is p = 5
        ["zeta", "eval", "--k", "1"],         # exceptional weight
        [],
    ]
    for argv in bad:
        code, _, err = run(argv)
        assert code == 2, argv
        assert err.startswith("bhlab:"), argv


def test_check_failure_exits_one():
    code, doc = run_json(["oracle", "gk-poisson", "--k", "3",
                          "--tol", "1e-30"])
    assert code == 1
    assert doc["status"] == "fail"
    assert all(r["status"] == "fail" for r in doc["results"])


def test_series_csv_shape():
    code, out, _ = run(["qexp", "gk", "--k", "2", "--qprec", "3",
                        "--out", "csv"])
    assert code == 0
    assert out.splitlines() == [
        "exponent,value,modulus",
        "0,-1/12,exact",
        "1,2,exact",
        "2,6,exact",
        "3,8,exact",
    ]
    assert "\r" not in out


def test_report_csv_shape():
    code, out, _ = run(["verify", "residue", "--n", "2", "--qprec", "30",
                        "--out", "csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "check,params,status,modulus,rel_error"
    assert len(lines) == 2
    assert lines[1].startswith("zeta-residue,")
    assert ",pass,5^2," in lines[1]


def test_json_envelope_keys():
    _, doc = run_json(["qexp", "delta-p", "--qprec", "4"])
    assert list(doc)[:2] == ["command", "config"]
    assert set(doc["config"]) == {"p", "prec", "qprec", "c", "N",
                                  "n", "k", "a", "tol"}


def test_config_file_defaults_and_flag_precedence(tmp_path):
    cfgfile = tmp_path / "run.json"
    cfgfile.write_text(json.dumps({"qprec": 5, "k": 2}))
    _, doc = run_json(["qexp", "gk", "--config", str(cfgfile)])
    assert len(doc["coefficients"]) == 6
    _, doc = run_json(["qexp", "gk", "--config", str(cfgfile),
                       "--qprec", "2"])
    assert doc["coefficients"] == ["-1/12", "2", "6"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"qprec": 5, "banana": 1}))
    code, _, err = run(["qexp", "gk", "--k", "2", "--config", str(bad)])
    assert code == 2 and "banana" in err


def test_periods_roundtrip_matches_table():
    _, table = run_json(["measure", "kl", "--prec", "4", "--n", "1"])
    _, periods = run_json(["measure", "periods", "--prec", "4", "--n", "1"])
    assert periods["level"] == 1
    for exact, recovered in zip(table["values"], periods["values"]):
        residue, _, mod = recovered.partition(" mod ")
        base, _, exp = mod.partition("^")
        q = int(base) ** int(exp)
        assert int(exact) % q == int(residue) % q


def test_moment_matches_library():
    code, out, _ = run(["moment", "--n", "1", "--k", "3", "--out", "csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "a,value"
    for a, line in enumerate(lines[1:]):
        assert line == f"{a},{kl_coset_moment(5, 2, 3, a, 1, 3)}"


def test_g0n_runs_both_routes():
    code, doc = run_json(["qexp", "g0n", "--qprec", "6", "--prec", "4"])
    assert code == 0
    assert doc["self_check"] == "divisor and log routes agree"
    assert doc["modulus"] == "5^4"
    assert doc["coefficients"][0] == "0"


def test_zeta_eval_trivial_zero():
    code, doc = run_json(["zeta", "eval", "--k", "2", "--n", "2",
                          "--qprec", "6"])
    assert code == 0
    assert doc["pole_order"] == 0
    assert set(doc["coefficients"]) == {"0"}


def test_zeta_eval_odd_weight_nonzero():
    code, doc = run_json(["zeta", "eval", "--k", "3", "--n", "2",
                          "--qprec", "6"])
    assert code == 0
    assert any(c != "0" for c in doc["coefficients"])


def test_verify_suite_expansion_and_ordering():
    code, doc = run_json(["verify", "weight-congruence", "--qprec", "10"])
    assert code == 0
    params = [(r["params"]["n"], r["params"]["k"]) for r in doc["results"]]
    assert len(params) == 27
    assert params == sorted(params)
    assert all(r["status"] == "pass" for r in doc["results"])


def test_oracle_reports_carry_tolerances():
    code, doc = run_json(["oracle", "qexp", "--k", "0", "--qprec", "40"])
    assert code == 0
    rep = doc["results"][0]
    assert rep["modulus"] == "float64"
    assert float(rep["rel_error"]) < float(rep["tolerance"])


def test_help_exits_zero(capsys):
    code, _, _ = run(["--help"])
    assert code == 0
    capsys.readouterr()


def test_runconfig_validation():
    cfg = RunConfig(command="sigma", sub=None, p=5, prec=0)
    with pytest.raises(UsageError):
        cfg.validate()
    cfg = RunConfig(command="sigma", sub=None, n=-1)
    with pytest.raises(UsageError):
        cfg.validate()
