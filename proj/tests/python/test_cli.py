import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("RDSIR_CLI", "rdsir")
SCENARIOS = Path(os.environ.get("RDSIR_SCENARIOS", Path(__file__).resolve().parents[2] / "scenarios"))

SMALL = ["--grid", "16", "--t-end", "0.01"]


def cli(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, timeout=300)


def key_values(stdout):
    out = {}
    for line in stdout.splitlines():
        if "=" in line:
            k, v = line.split("=", 1)
            out[k] = v
    return out


def closed_form_r0(beta, gamma, delta, nu, b=0.02):
    return beta * (b / (nu + delta)) / (gamma + nu + delta)


@pytest.mark.parametrize(
    "name, expected",
    [("fig3", closed_form_r0(0.1, 1, 0.001, 0.1)), ("fig4", closed_form_r0(50, 1, 0.001, 0.1))],
)
def test_r0_matches_closed_form(name, expected):
    res = cli("r0", "--preset", name)
    assert res.returncode == 0, res.stderr
    kv = key_values(res.stdout)
    assert kv["case"] == "noncompliant"
    assert abs(float(kv["r0"]) - expected) <= 1e-6 * expected
    assert kv["consistent"] == "true"


def test_r0_compliant_lines_for_all_compliant_births():
    kv = key_values(cli("r0", "--preset", "fig3").stdout)
    assert "r0_compliant" in kv
    assert abs(float(kv["steady_mean_compliant"]) - 20.0) < 1e-8
    assert "r0_compliant" not in key_values(cli("r0", "--preset", "fig4").stdout)


def test_r0_rejects_mixed_births():
    res = cli("r0", "--preset", "fig1")
    assert res.returncode == 2
    assert "xi" in res.stderr


def test_single_step_run(tmp_path):
    out = tmp_path / "run"
    res = cli("run", "--preset", "fig3", *SMALL, "--out", str(out))
    assert res.returncode == 0, res.stderr
    rows = (out / "series.csv").read_text().splitlines()
    assert rows[0] == "t,total_mass,infected_fraction,noncompliant_fraction,min_value,bound_gap"
    assert len(rows) == 3
    assert float(rows[1].split(",")[2]) == pytest.approx(0.009901, abs=1e-6)

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["status"] == "ok"
    assert manifest["grid"]["nx"] == 16
    assert manifest["dt"] == 0.01
    assert len(manifest["config_hash"]) == 16
    assert manifest["violations"] == []
    fields = {s["field"] for s in manifest["snapshots"]}
    assert fields == {"S", "I", "R", "Ss", "Is", "Rs", "I_plus_Istar"}
    for snap in manifest["snapshots"]:
        path = out / snap["path"]
        header = path.read_text().splitlines()[0]
        assert header.startswith("# nx=16,ny=16,xmin=-5,xmax=5,ymin=-5,ymax=5,")


def test_runs_are_deterministic(tmp_path):
    for tag in ("a", "b"):
        assert cli("run", "--preset", "fig6", "--grid", "16", "--t-end", "0.5", "--out", str(tmp_path / tag)).returncode == 0
    assert (tmp_path / "a" / "series.csv").read_bytes() == (tmp_path / "b" / "series.csv").read_bytes()


def test_scenario_files_match_presets(tmp_path):
    for name in ("fig1", "fig3", "fig4", "fig5", "fig6", "basic_sir"):
        a = key_values(cli("run", "--scenario", str(SCENARIOS / f"{name}.txt"), *SMALL, "--out", str(tmp_path / f"f_{name}")).stdout)
        b = key_values(cli("run", "--preset", name, *SMALL, "--out", str(tmp_path / f"p_{name}")).stdout)
        assert a["config_hash"] == b["config_hash"], name


def test_written_scenario_reproduces_the_run(tmp_path):
    first = tmp_path / "first"
    cli("run", "--preset", "fig5", "--grid", "8", "--set", "params.beta=2", "--t-end", "0.05", "--out", str(first))
    again = tmp_path / "again"
    res = cli("run", "--scenario", str(first / "scenario.txt"), "--out", str(again))
    assert res.returncode == 0, res.stderr
    assert (first / "series.csv").read_bytes() == (again / "series.csv").read_bytes()


def test_parse_errors_name_the_line(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("preset = fig1\nparams.beta = -1\n")
    res = cli("run", "--scenario", str(bad), "--out", str(tmp_path / "o"))
    assert res.returncode == 2
    assert "line 2" in res.stderr and "beta" in res.stderr


def test_exit_codes(tmp_path):
    assert cli("run", "--preset", "fig9", "--out", str(tmp_path / "x")).returncode == 2
    assert cli("run", "--scenario", str(tmp_path / "missing.txt"), "--out", str(tmp_path / "x")).returncode == 5
    assert cli("run", "--preset", "fig3", *SMALL, "--out", "/proc/forbidden").returncode == 5
    res = cli("run", "--preset", "fig4", "--grid", "16", "--dt", "0.1", "--t-end", "0.2",
              "--set", "params.beta=2000", "--out", str(tmp_path / "neg"))
    assert res.returncode == 3
    manifest = json.loads((tmp_path / "neg" / "manifest.json").read_text())
    assert manifest["status"] == "invariant_violation"
    assert manifest["violations"]
    assert cli("convergence", "--preset", "fig1", "--kind", "neither").returncode == 2


def test_steady_state(tmp_path):
    res = cli("steady-state", "--preset", "fig4", "--grid", "16", "--out", str(tmp_path / "s.csv"))
    assert res.returncode == 0, res.stderr
    kv = key_values(res.stdout)
    assert float(kv["steady_mean"]) == pytest.approx(0.02 / 0.101, rel=1e-10)
    assert kv["linearization_passed"] == "true"
    assert (tmp_path / "s.csv").read_text().startswith("# nx=16")


def test_convergence_orders():
    res = cli("convergence", "--preset", "fig1", "--kind", "temporal", "--grid", "16", "--dt", "0.04", "--t-end", "0.4")
    assert res.returncode == 0, res.stderr
    assert 0.8 <= float(key_values(res.stdout)["temporal_order"]) <= 1.2


def test_sweep(tmp_path):
    out = tmp_path / "sweep"
    res = cli("sweep", "--preset", "fig3", *SMALL, "--vary", "params.beta=0.1,0.2", "--vary", "params.mu=0,1",
              "--out", str(out))
    assert res.returncode == 0, res.stderr
    sweep = json.loads((out / "sweep.json").read_text())
    assert len(sweep["points"]) == 4
    hashes = {p["config_hash"] for p in sweep["points"]}
    assert len(hashes) == 4
    for p in sweep["points"]:
        assert (out / p["manifest"]).exists()
