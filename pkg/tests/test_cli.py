import json
import subprocess
import sys

import pytest

from rumorsource.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_exact_plain_value(capsys):
    code, out, _ = run_cli(["exact", "all-suspects", "--delta", "3", "--n", "4"],
                           capsys)
    assert code == 0
    assert out.strip() == "0.4"


def test_exact_json_carries_rational(capsys):
    code, out, _ = run_cli(["exact", "all-suspects", "--delta", "3", "--n", "4",
                            "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == 0.4
    assert doc["rational"] == "2/5"
    assert doc["method"] in ("closed-form", "tail-sum")


def test_exact_connected_and_two(capsys):
    code, out, _ = run_cli(["exact", "connected-k", "--delta", "3", "--n", "4",
                            "--k", "2"], capsys)
    assert code == 0 and out.strip() == "0.8"
    code, out, _ = run_cli(["exact", "two-at-d", "--delta", "3", "--n", "2",
                            "--d", "1", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["rational"] == "5/6"


def test_exact_conditional_and_bound(capsys):
    code, out, _ = run_cli(["exact", "conditional", "--delta", "3", "--n", "9",
                            "--m", "1"], capsys)
    assert code == 0
    # 3/4 + 1/4 / 9 = 7/9
    assert abs(float(out) - 7 / 9) < 1e-12
    code, out, _ = run_cli(["exact", "general-k-bound", "--delta", "4",
                            "--n", "25", "--k", "3", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["method"] == "lower-bound"


def test_exact_missing_parameter_is_validation_error(capsys):
    code, _, err = run_cli(["exact", "connected-k", "--delta", "3", "--n", "4"],
                           capsys)
    assert code == 4
    assert "error" in err


def test_exact_bad_degree_is_validation_error(capsys):
    code, _, _ = run_cli(["exact", "all-suspects", "--delta", "1", "--n", "4"],
                         capsys)
    assert code == 4


def test_asymptotic_values(capsys):
    code, out, _ = run_cli(["asymptotic", "phi1", "--delta", "3"], capsys)
    assert code == 0 and out.strip() == "0.25"
    code, out, _ = run_cli(["asymptotic", "phi3", "--delta", "3"], capsys)
    assert code == 0 and out.strip() == "0.75"
    code, out, _ = run_cli(["asymptotic", "phi2", "--delta", "3", "--k", "2"],
                           capsys)
    assert code == 0 and out.strip() == "0.75"
    code, _, _ = run_cli(["asymptotic", "phi2", "--delta", "3"], capsys)
    assert code == 4
    code, _, _ = run_cli(["asymptotic", "phi1", "--delta", "2"], capsys)
    assert code == 4


def test_usage_errors_exit_two():
    with pytest.raises(SystemExit) as ei:
        main(["exact", "all-suspects", "--delta", "3"])  # missing --n
    assert ei.value.code == 2
    with pytest.raises(SystemExit) as ei:
        main(["simulate", "--delta", "3", "--n", "5"])  # missing --seed
    assert ei.value.code == 2
    with pytest.raises(SystemExit) as ei:
        main(["nonsense"])
    assert ei.value.code == 2


def test_simulate_then_estimate_roundtrip(tmp_path, capsys):
    snap_file = tmp_path / "snap.json"
    code, _, _ = run_cli(["simulate", "--delta", "3", "--n", "9", "--seed", "6",
                          "-o", str(snap_file)], capsys)
    assert code == 0
    doc = json.loads(snap_file.read_text())
    assert doc["n"] == 9 and doc["source"] == 0
    suspects = ",".join(str(u) for u in doc["nodes"])
    code, out, _ = run_cli(["estimate", "--snapshot", str(snap_file),
                            "--suspects", suspects, "--tie-seed", "0"], capsys)
    assert code == 0
    est = json.loads(out)
    assert est["chosen"] in doc["nodes"]
    assert est["method"] == "tree-exact"
    assert set(est["argmax_set"]) <= set(doc["nodes"])


def test_estimate_csv_format(tmp_path, capsys):
    snap_file = tmp_path / "snap.json"
    run_cli(["simulate", "--delta", "3", "--n", "5", "--seed", "1",
             "-o", str(snap_file)], capsys)
    code, out, _ = run_cli(["estimate", "--snapshot", str(snap_file),
                            "--suspects", "0,1,2,3,4", "--tie-seed", "3",
                            "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "chosen,argmax_set,method,tie_broken"
    assert len(lines) == 2


def test_estimate_missing_file_exit_four(capsys):
    code, _, err = run_cli(["estimate", "--snapshot", "/nope/missing.json",
                            "--suspects", "0", "--tie-seed", "0"], capsys)
    assert code == 4 and "error" in err


def test_simulate_explicit_graph(tmp_path, capsys):
    graph_file = tmp_path / "g.txt"
    graph_file.write_text("0 1\n1 2\n2 3\n3 0\n")
    code, out, _ = run_cli(["simulate", "--edge-list", str(graph_file),
                            "--source", "0", "--n", "4", "--seed", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert sorted(doc["nodes"]) == [0, 1, 2, 3]


def test_simulate_capacity_exit_three(tmp_path, capsys):
    graph_file = tmp_path / "small.txt"
    graph_file.write_text("0 1\n")
    code, _, err = run_cli(["simulate", "--edge-list", str(graph_file),
                            "--source", "0", "--n", "10", "--seed", "1"],
                           capsys)
    assert code == 3 and "error" in err


def test_simulate_without_topology_exit_four(capsys):
    code, _, _ = run_cli(["simulate", "--n", "4", "--seed", "1"], capsys)
    assert code == 4


def test_experiment_csv(capsys):
    code, out, _ = run_cli(["experiment", "--scenario", "all-suspects",
                            "--delta", "3", "--n", "12", "--trials", "40",
                            "--seed", "9"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("scenario,delta,n,k,d,trials,seed,empirical_pc")
    fields = lines[1].split(",")
    assert fields[0] == "all-suspects" and fields[5] == "40"
    emp = float(fields[7])
    assert 0.0 <= emp <= 1.0


def test_experiment_json(capsys):
    code, out, _ = run_cli(["experiment", "--scenario", "two-at-d",
                            "--delta", "3", "--n", "10", "--trials", "25",
                            "--seed", "4", "--d", "1", "--format", "json"],
                           capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["scenario"] == "two-at-d" and doc["trials"] == 25
    assert doc["successes"] <= 25


def test_experiment_mismatched_flags_exit_four(capsys):
    code, _, _ = run_cli(["experiment", "--scenario", "all-suspects",
                          "--delta", "3", "--n", "10", "--trials", "5",
                          "--seed", "1", "--k", "2"], capsys)
    assert code == 4


def test_figure_tiny_sweep(capsys):
    code, out, _ = run_cli(["figure", "--figure", "fig9", "--seed", "3",
                            "--n", "14", "--trials", "20", "--deltas", "3",
                            "--ds", "1,2"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    assert all(row.split(",")[0] == "two-at-d" for row in lines[1:])


def test_console_script_installed():
    out = subprocess.run([sys.executable, "-m", "rumorsource.cli", "exact",
                          "all-suspects", "--delta", "3", "--n", "4"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.strip() == "0.4"
