import json
import os
import subprocess
import sys

import numpy as np
import pytest

import normaloid.fixtures as fixtures_mod
from normaloid.cli import main
from normaloid.fixtures import get_fixture
from normaloid.matrixio import load_matrix, save_matrix


@pytest.fixture()
def swap3_file(tmp_path):
    path = tmp_path / "swap3.json"
    save_matrix(path, get_fixture("normaloid_swap3").matrix)
    return str(path)


def _clean_env():
    env = dict(os.environ)
    for key in list(env):
        if key.startswith("NORMALOID_") and key != "NORMALOID_BACKEND":
            del env[key]
    return env


def test_classify_stdout_json(swap3_file, capsys):
    assert main(["classify", swap3_file]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["dimension"] == 3
    assert rep["operator_norm"] == pytest.approx(2.0, abs=1e-12)
    verdicts = {
        (v["class_id"], json.dumps(v.get("parameters"), sort_keys=True)): v["member"]
        for v in rep["verdicts"]
    }
    assert verdicts[("normaloid", "null")] is True
    assert verdicts[("normal", "null")] is False


def test_classify_out_file(swap3_file, tmp_path):
    out = tmp_path / "report.json"
    assert main(["classify", swap3_file, "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["spectral_radius"] == pytest.approx(2.0, abs=1e-12)
    raw = out.read_bytes()
    assert raw.endswith(b"\n") and b"\r" not in raw


def test_classify_malformed_file_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "data": [[1')
    assert main(["classify", str(bad)]) == 2


def test_classify_missing_file_exit_2(tmp_path):
    assert main(["classify", str(tmp_path / "ghost.json")]) == 2


def test_usage_errors_exit_2(capsys):
    assert main(["verify", "--suite", "BOGUS"]) == 2
    assert main([]) == 2
    assert main(["generate", "--class", "normal"]) == 2  # missing --n


def test_generate_then_classify(tmp_path, capsys):
    out = tmp_path / "gen.json"
    code = main([
        "generate", "--class", "quasinormal-partial-isometry",
        "--n", "4", "--rank", "2", "--seed", "3", "--out", str(out),
    ])
    assert code == 0
    t = load_matrix(out)
    assert t.shape == (4, 4)
    assert main(["classify", str(out)]) == 0
    rep = json.loads(capsys.readouterr().out)
    members = {v["class_id"]: v["member"] for v in rep["verdicts"]
               if not v.get("parameters")}
    assert members["quasinormal"] is True
    assert members["partial-isometry"] is True


def test_generate_invalid_rank_exit_2():
    assert main(["generate", "--class", "normal", "--n", "4", "--rank", "5"]) == 2


def test_generate_one_by_one(capsys):
    assert main(["generate", "--class", "normal", "--n", "1", "--seed", "2"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["n"] == 1


def test_verify_single_suite_pass(tmp_path, capsys):
    out = tmp_path / "results.json"
    code = main([
        "verify", "--suite", "TWO_BY_TWO_NORMALOID",
        "--trials", "50", "--seed", "1", "--out", str(out),
    ])
    assert code == 0
    results = json.loads(out.read_text())
    assert len(results) == 1
    assert results[0]["theorem_id"] == "TWO_BY_TWO_NORMALOID"
    assert results[0]["failures"] == 0
    assert results[0]["rng"] == "numpy-PCG64"


def test_verify_tampered_fixture_exit_1(monkeypatch, tmp_path):
    # corrupt one registry expectation: detection must gate the run
    tampered = []
    for name, expected, provenance in fixtures_mod._REGISTRY:
        if name == "identity3":
            expected = {**expected, "unitary": False}
        tampered.append((name, expected, provenance))
    monkeypatch.setattr(fixtures_mod, "_REGISTRY", tampered)
    code = main([
        "verify", "--suite", "TWO_BY_TWO_NORMALOID",
        "--trials", "10", "--seed", "1",
        "--out", str(tmp_path / "r.json"),
    ])
    assert code == 1


def test_pencil_scan_golden_against_diagonal_formula(tmp_path):
    # independent oracle: for diagonal T the pencil is diagonal, so each
    # row's minimum eigenvalue is the entrywise scalar expression minimum
    d = np.array([1.5, 0.8, 0.2])
    t = np.diag(d).astype(complex)
    tfile = tmp_path / "diag.json"
    save_matrix(tfile, t)
    out = tmp_path / "scan.csv"
    p, r, points = 0.5, 2.0, 50
    code = main([
        "pencil-scan", str(tfile), "--p", str(p), "--r", str(r),
        "--points", str(points), "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "lambda,min_eig"
    assert len(lines) == points + 1
    norm_sq = float(np.max(d) ** 2)
    grid = np.logspace(np.log10(norm_sq) - 6.0, np.log10(norm_sq), points)
    a = d**2  # T*T diagonal
    b = d**2  # TT* diagonal
    for line, lam in zip(lines[1:], grid):
        lam_s, eig_s = line.split(",")
        assert float(lam_s) == pytest.approx(lam, rel=1e-12)
        expected = np.min(r * a**p * b**r - (p + r) * lam**p * b**r
                          + p * lam ** (p + r))
        assert float(eig_s) == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_pencil_scan_zero_matrix_rows_positive(tmp_path):
    tfile = tmp_path / "zero.json"
    save_matrix(tfile, np.zeros((2, 2)))
    out = tmp_path / "scan.csv"
    assert main(["pencil-scan", str(tfile), "--points", "10", "--out", str(out)]) == 0
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    for lam_s, eig_s in rows:
        lam = float(lam_s)
        assert float(eig_s) == pytest.approx(lam**2, rel=1e-12)  # p=r=1


def test_fixtures_listing(capsys):
    assert main(["fixtures"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) >= 7
    assert {"name", "dimension", "provenance"} <= set(rows[0])


def test_tolerance_profile_flag(swap3_file, capsys):
    assert main(["--tolerance", "strict", "classify", swap3_file]) == 0
    assert main(["--tolerance", "loose", "classify", swap3_file]) == 0


def test_env_override_rejected_value(swap3_file, monkeypatch):
    monkeypatch.setenv("NORMALOID_PSD_TOL", "not-a-number")
    assert main(["classify", swap3_file]) == 2


def _run_cli(args, env):
    return subprocess.run(
        [sys.executable, "-m", "normaloid", *args],
        capture_output=True, env=env, timeout=600,
    )


def test_subprocess_entry_point_and_byte_stability(tmp_path, swap3_file):
    env = _clean_env()
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for out in (out1, out2):
        proc = _run_cli(
            ["verify", "--suite", "SCALAR_ROOT", "--trials", "40",
             "--seed", "1", "--out", str(out)],
            env,
        )
        assert proc.returncode == 0, proc.stderr.decode()
    assert out1.read_bytes() == out2.read_bytes()

    # classify golden byte-stability on the same input
    r1 = _run_cli(["classify", swap3_file], env)
    r2 = _run_cli(["classify", swap3_file], env)
    assert r1.returncode == 0
    assert r1.stdout == r2.stdout


def test_env_override_applies_in_subprocess(tmp_path, swap3_file):
    env = _clean_env()
    env["NORMALOID_SPHERE_RESTARTS"] = "16"
    proc = _run_cli(["classify", swap3_file], env)
    assert proc.returncode == 0
    rep = json.loads(proc.stdout)
    assert rep["operator_norm"] == pytest.approx(2.0, abs=1e-12)
