import csv
import json

import pytest

from pnormsimplex import cli
from pnormsimplex.lp import save_lp


@pytest.fixture
def square_file(tmp_path, square_lp):
    from pnormsimplex import Basis

    path = tmp_path / "square.json"
    save_lp(square_lp, path, initial_basis=Basis((3, 4)))
    return str(path)


def run(argv):
    return cli.main(argv)


def test_generate_solve_analyze_verify_pipeline(tmp_path, capsys):
    km = tmp_path / "km3.json"
    trace = tmp_path / "km3.trace.json"
    assert run(["generate", "kleeminty", "--m", "3", "--out", str(km)]) == 0
    assert run(["solve", str(km), "--rule", "dantzig",
                "--trace", str(trace)]) == 0
    out = capsys.readouterr().out
    assert "7 iterations" in out

    assert run(["analyze", str(km), "--p", "2"]) == 0
    out = capsys.readouterr().out
    assert "feasible bases 8" in out
    assert (tmp_path / "km3.catalog.json").exists()
    assert (tmp_path / "km3.qreport.json").exists()
    assert (tmp_path / "km3.bounds.json").exists()

    assert run(["verify", str(km), str(trace)]) == 0
    out = capsys.readouterr().out
    assert "PASS trace_consistency" in out
    assert "FAIL" not in out


def test_solve_square_reports_objective(square_file, capsys):
    assert run(["solve", square_file, "--rule", "pnorm:2"]) == 0
    out = capsys.readouterr().out
    assert "optimal, 2 iterations, objective -2" in out


def test_steepest_alias_writes_identical_trace(tmp_path, square_file):
    t1, t2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["solve", square_file, "--rule", "steepest", "--trace", str(t1)]) == 0
    assert run(["solve", square_file, "--rule", "pnorm:2", "--trace", str(t2)]) == 0
    assert t1.read_bytes() == t2.read_bytes()


def test_solve_initial_basis_flag(square_file, capsys):
    assert run(["solve", square_file, "--rule", "dantzig",
                "--initial-basis", "1,2"]) == 0
    assert "0 iterations" in capsys.readouterr().out


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["solve", str(bad), "--rule", "dantzig"]) == 2

    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps({"m": 1, "n": 2}))
    assert run(["solve", str(missing), "--rule", "dantzig"]) == 2

    infeasible = tmp_path / "infeasible.json"
    infeasible.write_text(json.dumps(
        {"name": "inf", "m": 1, "n": 2, "A": [[1, 1]], "b": [-1], "c": [0, 0]}))
    assert run(["solve", str(infeasible), "--rule", "dantzig"]) == 3

    unbounded = tmp_path / "unbounded.json"
    unbounded.write_text(json.dumps(
        {"name": "unb", "m": 1, "n": 2, "A": [[1, -1]], "b": [1],
         "c": [0, -1], "initial_basis": [1]}))
    assert run(["solve", str(unbounded), "--rule", "dantzig"]) == 4

    degenerate = tmp_path / "degenerate.json"
    degenerate.write_text(json.dumps(
        {"name": "deg", "m": 1, "n": 2, "A": [[1, 1]], "b": [0],
         "c": [-1, 0], "initial_basis": [2]}))
    assert run(["solve", str(degenerate), "--rule", "dantzig"]) == 5
    assert run(["analyze", str(degenerate), "--p", "2"]) == 7
    capsys.readouterr()


def test_verify_fails_on_tampered_trace(tmp_path, square_file, capsys):
    trace = tmp_path / "t.json"
    assert run(["solve", square_file, "--rule", "pnorm:2",
                "--trace", str(trace)]) == 0
    doc = json.loads(trace.read_text())
    doc["records"][0]["step"] = "7"
    trace.write_text(json.dumps(doc))
    assert run(["verify", square_file, str(trace)]) == 8
    assert "FAIL trace_consistency" in capsys.readouterr().out


def test_analyze_all_optimal_skips_bounds(tmp_path, capsys):
    flat = tmp_path / "flat.json"
    flat.write_text(json.dumps(
        {"name": "flat", "m": 2, "n": 4, "A": [[1, 0, 1, 0], [0, 1, 0, 1]],
         "b": [1, 1], "c": [0, 0, 0, 0]}))
    assert run(["analyze", str(flat), "--p", "2"]) == 0
    assert "q and bounds are undefined" in capsys.readouterr().out


def experiment_config(tmp_path, **overrides):
    cfg = {
        "instances": [
            {"type": "kleeminty", "m": 2},
            {"type": "random", "m": 2, "n": 4, "seeds": [1, 2]},
            {"type": "dmdp", "m": 2, "k": 2, "theta": "1/2", "seeds": [1]},
        ],
        "rules": ["dantzig", "pnorm:2"],
        "analysis_p": 2,
        "output": str(tmp_path / "results.csv"),
    }
    cfg.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg))
    return path, cfg


def test_experiment_runs_and_all_pass(tmp_path, capsys):
    path, cfg = experiment_config(tmp_path)
    assert run(["experiment", str(path)]) == 0
    with open(tmp_path / "results.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 4 * 2
    assert rows[0].keys() >= {"instance", "rule", "p", "gamma", "delta", "q",
                              "iterations", "thm3", "km2", "all_checks_pass",
                              "dmdp_thm7", "failure", "timestamp"}
    assert all(row["all_checks_pass"] == "True" for row in rows)
    assert all(row["failure"] == "" for row in rows)
    for row in rows:
        if row["instance"].startswith("dmdp"):
            assert int(row["dmdp_thm7"]) > 0
            assert int(row["iterations"]) <= int(row["dmdp_thm7"])
        else:
            assert row["dmdp_thm7"] == ""
    capsys.readouterr()


def test_experiment_deterministic_modulo_timestamp(tmp_path, capsys):
    path, cfg = experiment_config(tmp_path)
    assert run(["experiment", str(path)]) == 0
    first = (tmp_path / "results.csv").read_text()
    assert run(["experiment", str(path)]) == 0
    second = (tmp_path / "results.csv").read_text()

    def strip_ts(text):
        return ["," .join(line.split(",")[:-1]) for line in text.splitlines()]

    assert strip_ts(first) == strip_ts(second)
    capsys.readouterr()


def test_experiment_json_format(tmp_path, capsys):
    out = tmp_path / "results.json"
    path, _ = experiment_config(tmp_path, output=str(out), format="json")
    assert run(["experiment", str(path)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["rows"]) == 8
    assert all(row["all_checks_pass"] for row in doc["rows"])
    capsys.readouterr()


def test_experiment_rejects_empty_rules(tmp_path):
    path, _ = experiment_config(tmp_path, rules=[])
    assert run(["experiment", str(path)]) == 2


def test_experiment_unbounded_row_fails(tmp_path, capsys):
    unb = tmp_path / "unb.json"
    unb.write_text(json.dumps(
        {"name": "unb", "m": 1, "n": 2, "A": [[1, -1]], "b": [1],
         "c": [0, -1], "initial_basis": [1]}))
    path, _ = experiment_config(
        tmp_path, instances=[{"file": str(unb)}], rules=["dantzig"])
    assert run(["experiment", str(path)]) == 8
    text = (tmp_path / "results.csv").read_text()
    assert "unbounded" in text
    capsys.readouterr()
