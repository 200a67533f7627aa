"""Command-line interface: generate, solve, verify, bench."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from pathevac.cli import main


def run_cli(*args: str):
    """Run the CLI in-process, capturing exit code; stdout via capsys at call site."""
    return main(list(args))


def run_cli_subprocess(*args: str):
    return subprocess.run(
        [sys.executable, "-m", "pathevac.cli", *args],
        capture_output=True,
        text=True,
    )


@pytest.fixture()
def inst_path(tmp_path):
    path = str(tmp_path / "inst.json")
    rc = run_cli(
        "gen", "--n", "10", "--coord-max", "100", "--w-max", "20",
        "--seed", "7", "-o", path,
    )
    assert rc == 0
    return path


def test_gen_is_deterministic(tmp_path):
    a = str(tmp_path / "a.json")
    b = str(tmp_path / "b.json")
    args = ["gen", "--n", "8", "--coord-max", "50", "--w-max", "9", "--seed", "3"]
    assert run_cli(*args, "-o", a) == 0
    assert run_cli(*args, "-o", b) == 0
    assert open(a, "rb").read() == open(b, "rb").read()
    different = str(tmp_path / "c.json")
    assert run_cli("gen", "--n", "8", "--coord-max", "50", "--w-max", "9",
                   "--seed", "4", "-o", different) == 0
    assert open(a, "rb").read() != open(different, "rb").read()


def test_gen_rejects_bad_args(tmp_path):
    out = str(tmp_path / "x.json")
    assert run_cli("gen", "--n", "10", "--coord-max", "5", "-o", out) == 2
    assert run_cli("gen", "--n", "-1", "-o", out) == 2
    assert run_cli("gen", "--n", "2", "--w-max", "0", "-o", out) == 2


def test_solve_opt_then_verify(tmp_path, inst_path, capsys):
    plan_path = str(tmp_path / "plan.json")
    rc = run_cli("solve-opt", inst_path, "--k", "3", "--all-plus",
                 "--cost-model", "discrete", "-o", plan_path)
    out = capsys.readouterr().out
    assert rc == 0
    assert out.startswith("objective ")
    rc = run_cli("verify", inst_path, plan_path, "--all-plus",
                 "--cost-model", "discrete")
    out = capsys.readouterr().out
    assert rc == 0
    assert out.startswith("PASS")


def test_verify_catches_tampered_plan(tmp_path, inst_path, capsys):
    plan_path = str(tmp_path / "plan.json")
    assert run_cli("solve-opt", inst_path, "--k", "2", "--all-minus",
                   "-o", plan_path) == 0
    capsys.readouterr()
    obj = json.load(open(plan_path))
    obj["objective"] += 1
    json.dump(obj, open(plan_path, "w"))
    rc = run_cli("verify", inst_path, plan_path, "--all-minus")
    out = capsys.readouterr().out
    assert rc == 1
    assert out.startswith("FAIL")


def test_solve_opt_scenario_file(tmp_path, inst_path, capsys):
    inst = json.load(open(inst_path))
    w = [v["w_min"] for v in inst["vertices"]]
    sc_path = str(tmp_path / "s.json")
    json.dump({"w": w}, open(sc_path, "w"))
    rc = run_cli("solve-opt", inst_path, "--k", "2", "--scenario", sc_path)
    assert rc == 0
    assert capsys.readouterr().out.startswith("objective ")
    # out-of-bounds scenario is rejected
    json.dump({"w": [0] * len(w)}, open(sc_path, "w"))
    assert run_cli("solve-opt", inst_path, "--k", "2", "--scenario", sc_path) == 2
    # wrong length
    json.dump({"w": w + [1]}, open(sc_path, "w"))
    assert run_cli("solve-opt", inst_path, "--k", "2", "--scenario", sc_path) == 2


def test_solve_mmr_both_algos_agree(tmp_path, inst_path, capsys):
    p1 = str(tmp_path / "dp.json")
    p2 = str(tmp_path / "bs.json")
    assert run_cli("solve-mmr", inst_path, "--k", "2", "--algo", "dp", "-o", p1) == 0
    assert run_cli("solve-mmr", inst_path, "--k", "2", "--algo", "bs", "-o", p2) == 0
    capsys.readouterr()
    a = json.load(open(p1))
    b = json.load(open(p2))
    assert a["objective"] == b["objective"]
    assert a["objective_kind"] == "max_regret"
    rc = run_cli("verify", inst_path, p1)
    assert rc == 0
    assert capsys.readouterr().out.startswith("PASS")


def test_small_verify_checks_optimality(tmp_path, capsys):
    inst_path = str(tmp_path / "small.json")
    assert run_cli("gen", "--n", "5", "--coord-max", "30", "--w-max", "6",
                   "--seed", "2", "-o", inst_path) == 0
    plan_path = str(tmp_path / "plan.json")
    assert run_cli("solve-mmr", inst_path, "--k", "2", "-o", plan_path) == 0
    capsys.readouterr()
    rc = run_cli("verify", inst_path, plan_path)
    out = capsys.readouterr().out
    assert rc == 0
    assert "optimal" in out


def test_invalid_instance_reports_violations(tmp_path):
    bad_path = str(tmp_path / "bad.json")
    obj = {
        "vertices": [
            {"x": 0, "w_min": 1, "w_max": 2},
            {"x": 0, "w_min": 2, "w_max": 1},
        ],
        "capacity": 0,
        "tau": 1,
    }
    json.dump(obj, open(bad_path, "w"))
    res = run_cli_subprocess("solve-opt", bad_path, "--k", "1")
    assert res.returncode == 2
    assert "coords not strictly increasing at index 1" in res.stderr
    assert "weight interval empty at index 1" in res.stderr
    assert "capacity not positive" in res.stderr


def test_bench_emits_json_lines(capsys):
    rc = run_cli("bench", "--algo", "optk", "--n-list", "8,12", "--k-list",
                 "1,2", "--seed", "5")
    out = capsys.readouterr().out
    assert rc == 0
    lines = [ln for ln in out.splitlines() if ln.strip()]
    assert len(lines) == 4
    for ln in lines:
        rec = json.loads(ln)
        assert rec["algo"] == "optk"
        assert rec["n"] in (8, 12)
        assert rec["k"] in (1, 2)
        assert "value" in rec and "wall_ms" in rec and "counters" in rec


def test_bench_mmr(capsys):
    rc = run_cli("bench", "--algo", "mmr-bs", "--n-list", "8", "--k-list", "2")
    out = capsys.readouterr().out
    assert rc == 0
    rec = json.loads(out.splitlines()[0])
    assert rec["algo"] == "mmr-bs"


def test_console_entry_point_runs():
    res = run_cli_subprocess("--help")
    assert res.returncode == 0
    assert "solve-mmr" in res.stdout
