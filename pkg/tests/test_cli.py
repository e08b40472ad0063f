import json
import subprocess
import sys

import pytest

from lccontrol.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_chain(capsys):
    code, out, _ = run(capsys, "solve", "--gen", "chain:9", "--ell", "2")
    report = json.loads(out)
    assert code == 0
    assert report["n_inputs"] == 3 and report["valid"]
    assert report["seed"] == 0 and len(report["config_hash"]) == 16


def test_solve_from_file_one_based(tmp_path, capsys):
    path = tmp_path / "g.txt"
    path.write_text("# a chain\n1 2\n2 3\n")
    code, out, _ = run(capsys, "solve", "--input", str(path), "--one-based", "--ell", "inf")
    assert code == 0
    assert json.loads(out)["inputs"] == [1]


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "--gen", "cycle:3", "--inputs", "0,2")[0] == 0
    code, out, _ = run(capsys, "verify", "--gen", "cycle:3", "--inputs", "0")
    assert code == 2 and json.loads(out)["valid"] is False


def test_exact_too_large(capsys):
    code, _, err = run(capsys, "exact", "--gen", "chain:20", "--method", "bruteforce")
    assert code == 1 and err


def test_exact_bnb(capsys):
    code, out, _ = run(capsys, "exact", "--gen", "cycle:5", "--ell", "1")
    report = json.loads(out)
    assert code == 0 and report["optimal"] and report["n_inputs"] == 3


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--gen", "chain:9", "--ell", "2")
    assert json.loads(out)["bounds"] == {"n_m": 1, "n_ds": 3, "n_s": 1, "lower": 1, "upper": 3}


def test_export_ilp_cycling(capsys):
    code, out, _ = run(capsys, "export-ilp", "--gen", "chain:3", "--ell", "2", "--variant", "cycling")
    assert code == 0
    assert out.startswith("\\ seed=0 config_hash=")
    assert "balance:" in out and "Binary" in out


def test_randomize_reports_trials(tmp_path, capsys):
    path = tmp_path / "g.txt"
    links = [(i, j) for i in range(30) for j in range(30) if i != j][:200]
    path.write_text("\n".join(f"{a} {b}" for a, b in links) + "\n")
    code, out, err = run(capsys, "randomize", "--input", str(path), "--seed", "4")
    assert code == 0
    assert "rewiring trials: 1381" in err
    body = [line for line in out.splitlines() if line and not line.startswith("#")]
    assert body[0] == "n=30" and len(body) == 201


def test_energy_rows(capsys):
    code, out, _ = run(capsys, "energy", "--gen", "chain:6", "--m", "2,3", "--trials", "3")
    lines = [line for line in out.splitlines() if not line.startswith("#")]
    assert code == 0
    assert lines[0] == "m,strategy,geomean_energy,singular_count"
    assert len(lines) == 5


def test_energy_rejects_large(capsys):
    assert run(capsys, "energy", "--gen", "chain:80")[0] == 1


def test_scan_deterministic_across_workers(capsys):
    argv = ["scan", "--model", "ER", "--n", "60", "--c", "1,2", "--ell", "1,2", "--instances", "3", "--seed", "5"]
    _, serial, _ = run(capsys, *argv, "--workers", "1")
    _, pooled, _ = run(capsys, *argv, "--workers", "2")
    assert serial == pooled
    lines = serial.splitlines()
    assert lines[0].startswith("# seed=5 config_hash=")
    assert lines[2].startswith("model,n,c,gamma,ell,seed")
    assert len(lines) == 3 + 12


def test_scan_sf_needs_gamma(capsys):
    assert run(capsys, "scan", "--model", "SF", "--n", "50", "--c", "2")[0] == 1


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("LCC_SEED", "17")
    _, out, _ = run(capsys, "solve", "--gen", "chain:4")
    assert json.loads(out)["seed"] == 17


def test_config_hash_ignores_output(tmp_path, capsys):
    _, out, _ = run(capsys, "solve", "--gen", "chain:5")
    dest = tmp_path / "r.json"
    assert run(capsys, "solve", "--gen", "chain:5", "-o", str(dest))[0] == 0
    assert json.loads(dest.read_text())["config_hash"] == json.loads(out)["config_hash"]


def test_bad_invocations(capsys):
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "solve", "--gen", "blob:3")[0] == 1
    assert run(capsys, "solve", "--gen", "chain:3", "--ell", "0")[0] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lccontrol", "solve", "--gen", "star:4", "--ell", "1"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["n_inputs"] == 3
