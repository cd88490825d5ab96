import json
import math
import os

import pytest

from predlab.cli import main
from predlab.runner import (EXIT_PASS, EXIT_USAGE, EXIT_VERDICT, Scenario,
                            load_config, run_config, run_scenario)


def test_sigma_subcommand(tmp_path, capsys):
    rc = main(["sigma", "ma1:b=1.0,sigma2=1.0", "--n", "12", "--precision", "128",
               "--out", str(tmp_path)])
    assert rc == EXIT_PASS
    out = json.loads(capsys.readouterr().out)
    assert out["usable_n"] == 12
    trace = (tmp_path / "trace.csv").read_text()
    assert trace.splitlines()[2] == "n,sigma2,v,ratio,nth_root"


def test_tau_subcommand(capsys):
    rc = main(["tau", "[(1.5707963267948966,0.7853981633974483)]"])
    assert rc == EXIT_PASS
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == pytest.approx(math.sin(math.pi / 8), rel=1e-12)


def test_geomean_subcommand(capsys):
    rc = main(["geomean", "ma1:b=0.5,sigma2=1.0", "--precision", "128"])
    assert rc == EXIT_PASS
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == pytest.approx(1 / (2 * math.pi), rel=1e-10)


def test_eigen_subcommand(capsys):
    rc = main(["eigen", "ma1:b=1.0,sigma2=1.0", "--n", "20", "--precision", "128"])
    assert rc == EXIT_PASS
    out = json.loads(capsys.readouterr().out)
    assert out["lambda_min"] == pytest.approx(2 - 2 * math.cos(math.pi / 22), abs=1e-10)


def test_parse_error_exit_code(capsys):
    rc = main(["sigma", "pollaczekk:a=1"])
    assert rc == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_budget_violation_names_bits(capsys):
    rc = main(["verify", "rosenblatt1", "--alpha", "1.5707963267948966",
               "--n", "500", "--precision", "128"])
    assert rc == EXIT_USAGE
    err = capsys.readouterr().err
    assert "bits" in err


def test_scenario_outputs_deterministic(tmp_path):
    s = Scenario(id="det", density="ma1:b=1.0,sigma2=1.0", n_max=30,
                 precision_bits=128, out_dir=str(tmp_path / "a"))
    run_scenario(s)
    s2 = Scenario(id="det", density="ma1:b=1.0,sigma2=1.0", n_max=30,
                  precision_bits=128, out_dir=str(tmp_path / "b"))
    run_scenario(s2)
    for name in ("trace.csv", "covariances.csv", "summary.json"):
        a = (tmp_path / "a" / "det" / name).read_bytes()
        b = (tmp_path / "b" / "det" / name).read_bytes()
        assert a == b, name


def test_emitted_spec_reparses(tmp_path):
    s = Scenario(id="rt", density="product:f=ma1:b=0.5,sigma2=1.0;"
                 "g=abs_trig_pow(h=const(1.0),t=sin2,alpha=1.0)",
                 n_max=20, precision_bits=192, out_dir=str(tmp_path))
    summary = run_scenario(s)
    from predlab.grammar import parse_density
    d = parse_density(summary["density"])
    assert d.spec_string() == summary["density"]


def test_run_config_aggregate(tmp_path, capsys):
    cfg = {
        "out": str(tmp_path),
        "scenarios": [
            {"id": "ok1", "density": "ma1:b=1.0,sigma2=1.0", "n_max": 25,
             "precision_bits": 128},
            {"id": "ok2", "density": "const(1.0)", "n_max": 10,
             "precision_bits": 128},
            {"id": "bad", "density": "ma1:b=5.0,sigma2=1.0", "n_max": 10,
             "precision_bits": 128},
        ],
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg))
    rc = run_config(str(path), max_workers=1)
    assert rc >= EXIT_VERDICT
    out = capsys.readouterr().out
    assert "ok1" in out and "pass" in out
    assert "bad" in out


def test_run_config_empty(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"scenarios": []}))
    assert run_config(str(path)) == EXIT_PASS
    assert "warning" in capsys.readouterr().out


def test_duplicate_ids_rejected(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"scenarios": [
        {"id": "x", "density": "const(1.0)"},
        {"id": "x", "density": "const(2.0)"},
    ]}))
    with pytest.raises(ValueError):
        load_config(str(path))


def test_verify_cli_davisson(tmp_path, capsys):
    rc = main(["verify", "davisson", "--alpha", "1.0", "--delta", "0.5",
               "--n", "60", "--precision", "256", "--out", str(tmp_path)])
    assert rc == EXIT_PASS
    out = json.loads(capsys.readouterr().out)
    assert out["verdicts"]["davisson"] == "pass"
    assert (tmp_path / "verify-davisson" / "rate_davisson.json").exists()


def test_run_flags_override_config(tmp_path, capsys):
    cfg = {"out": str(tmp_path / "orig"),
           "scenarios": [{"id": "ov", "density": "ma1:b=0.5,sigma2=1.0",
                          "n_max": 200, "precision_bits": 512}]}
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cfg))
    rc = main(["run", str(path), "--n", "15", "--precision", "128",
               "--out", str(tmp_path / "flag")])
    assert rc == EXIT_PASS
    summary = json.loads((tmp_path / "flag" / "ov" / "summary.json").read_text())
    assert summary["n_max"] == 15 and summary["precision_bits"] == 128
    assert not (tmp_path / "orig").exists()
