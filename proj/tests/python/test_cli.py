"""End-to-end checks of the specsim command-line tool."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("SPECSIM_CLI", "specsim")


def run_cli(*args, cwd=None):
    return subprocess.run([CLI, *args], capture_output=True, text=True, cwd=cwd)


@pytest.fixture
def topology(tmp_path):
    out = tmp_path / "topo.json"
    proc = run_cli("gen-topology", "--n", "8", "--radius", "300", "--out", str(out), "--seed", "5")
    assert proc.returncode == 0, proc.stderr
    return out


def test_gen_topology_schema(topology):
    doc = json.loads(topology.read_text())
    for key in ("n", "area", "positions", "radius", "edges"):
        assert key in doc
    assert doc["n"] == 8
    assert len(doc["positions"]) == 8


def test_analyze_summary_and_report(topology, tmp_path):
    report = tmp_path / "ne.json"
    proc = run_cli("analyze", "--topology", str(topology), "--m", "3", "--out", str(report))
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.startswith("ne_count=")
    assert ",min_U=" in proc.stdout and ",bound=" in proc.stdout
    doc = json.loads(report.read_text())
    assert doc["ne_count"] == len(doc["equilibria"]) > 0
    row = doc["equilibria"][0]
    for key in ("profile", "U", "phi", "bound"):
        assert key in row


def test_bound_matches_report(topology, tmp_path):
    report = tmp_path / "ne.json"
    run_cli("analyze", "--topology", str(topology), "--m", "3", "--out", str(report))
    doc = json.loads(report.read_text())
    proc = run_cli("bound", "--topology", str(topology), "--m", "3")
    assert proc.returncode == 0
    assert abs(float(proc.stdout.strip()) - doc["bound"]) < 1e-9


def test_run_writes_trials_csv(topology, tmp_path):
    out = tmp_path / "trials.csv"
    proc = run_cli("run", "--topology", str(topology), "--m", "3", "--trials", "10",
                   "--max-iters", "5000", "--out", str(out), "--seed", "1")
    assert proc.returncode == 0, proc.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "trial_id,converged,iterations,final_profile,final_U,is_ne"
    assert len(lines) == 11
    again = tmp_path / "again.csv"
    run_cli("run", "--topology", str(topology), "--m", "3", "--trials", "10",
            "--max-iters", "5000", "--out", str(again), "--seed", "1")
    assert again.read_text() == out.read_text()


def test_compare_csv(topology, tmp_path):
    out = tmp_path / "compare.csv"
    proc = run_cli("compare", "--topology", str(topology), "--m", "3", "--trials", "5",
                   "--iterations", "500", "--out", str(out), "--seed", "2")
    assert proc.returncode == 0, proc.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "algorithm,trial_id,final_U,is_ne,iterations"
    algorithms = {line.split(",")[0] for line in lines[1:]}
    assert algorithms == {"sla", "sap_nc", "s_logit"}


def test_sweep_emits_tables(topology, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({
        "topology": {"file": str(topology)},
        "channels": {"preset": "hiperlan2", "m": 3},
        "algorithms": ["sla", "s_logit"],
        "sla": {"alpha": 0.25, "max_iters": 3000},
        "baseline": {"iterations": 300},
        "trials": 5,
        "seed": 4,
        "sweep": {"axis": "scale", "points": [4, 6]},
    }))
    out_dir = tmp_path / "results"
    proc = run_cli("sweep", "--config", str(config), "--out-dir", str(out_dir))
    assert proc.returncode == 0, proc.stderr
    aggregate = (out_dir / "aggregate.csv").read_text().splitlines()
    assert aggregate[0] == "point_label,algorithm,trials,mean_U,std_U,conv_rate,mean_iters,ne_rate,bound"
    assert len(aggregate) == 1 + 2 * 2  # two points, two algorithms
    assert (out_dir / "long.csv").exists()
    assert (out_dir / "trials_n=4.csv").exists()
    assert (out_dir / "trials_n=6.csv").exists()


def test_missing_file_gives_machine_readable_error(tmp_path):
    proc = run_cli("analyze", "--topology", str(tmp_path / "missing.json"), "--m", "2")
    assert proc.returncode != 0
    err = json.loads(proc.stderr.strip().splitlines()[-1])
    assert "error" in err


def test_invalid_config_names_the_field(tmp_path):
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({"trials": 0}))
    proc = run_cli("sweep", "--config", str(config))
    assert proc.returncode != 0
    err = json.loads(proc.stderr.strip().splitlines()[-1])
    assert err.get("field") == "trials"
