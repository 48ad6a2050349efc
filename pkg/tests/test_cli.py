"""End-to-end tests of the command line interface."""

import json
import subprocess
import sys

import numpy as np


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "povmkit", *args],
        capture_output=True,
        text=True,
    )


# ---------------------------------------------------------------- build


def test_build_cyclic():
    r = run_cli("build", "cyclic", "-m", "3")
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert data["povm"]["n"] == 3
    assert data["dilation"]["dim"] == 4
    assert data["dilation"]["method"] == "structured"
    assert data["dilation"]["padding_indices"] == [3]


def test_build_generic_method():
    r = run_cli("build", "octahedron", "--method", "generic")
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert data["dilation"]["method"] == "generic"
    assert data["dilation"]["outcome_map"] == [[j, j] for j in range(6)]


def test_build_unknown_family_exits_2():
    assert run_cli("build", "hexagon").returncode == 2


def test_build_cyclic_without_m_exits_2():
    assert run_cli("build", "cyclic").returncode == 2


# ---------------------------------------------------------------- verify


def test_verify_single_family_text():
    r = run_cli("verify", "tetrahedron", "--states", "5")
    assert r.returncode == 0, r.stderr
    assert "PASS" in r.stdout
    assert "tetrahedron" in r.stdout


def test_verify_all_json():
    r = run_cli("verify", "--all", "--states", "3", "--format", "json")
    assert r.returncode == 0, r.stderr
    reports = json.loads(r.stdout)
    assert len(reports) == 17
    assert all(rep["passed"] for rep in reports)
    labels = {rep["label"] for rep in reports}
    assert "cyclic(m=16)" in labels
    assert "icosahedron" in labels


def test_verify_degenerate_seed_exits_3():
    r = run_cli(
        "verify", "dihedral", "-m", "3", "--alpha", "1.0", "--beta", "0.0"
    )
    assert r.returncode == 3
    assert "FAIL" in r.stdout


def test_verify_requires_family_or_all():
    assert run_cli("verify").returncode == 2


def test_verify_dihedral_from_angle():
    r = run_cli(
        "verify", "dihedral", "-m", "4", "--theta", "1.0471975511965976",
        "--states", "3", "--format", "json",
    )
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)[0]
    assert report["passed"]
    assert abs(report["family"]["alpha"] - np.cos(0.5235987755982988)) < 1e-12


# ---------------------------------------------------------------- simulate


def test_simulate_tetrahedron_csv():
    r = run_cli(
        "simulate", "tetrahedron", "--state", "0,0,1", "--format", "csv"
    )
    assert r.returncode == 0, r.stderr
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "outcome,analytic,circuit,abs_error"
    assert len(lines) == 5
    first = lines[1].split(",")
    assert first[0] == "0"
    assert abs(float(first[1]) - (3 + np.sqrt(3)) / 12) < 1e-12
    assert float(first[3]) < 1e-9


def test_simulate_default_mixed_state_json():
    r = run_cli("simulate", "cyclic", "-m", "5")
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert np.abs(np.array(data["analytic"]) - 0.2).max() < 1e-12
    assert data["max_abs_error"] < 1e-9


def test_simulate_amplitude_state():
    r = run_cli(
        "simulate", "cyclic", "-m", "2", "--state", "0.6,0,0.8,0"
    )
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    # |<(1,1)/sqrt2 | (0.6, 0.8)>|^2 = (1.4^2)/2 = 0.98
    assert abs(data["analytic"][0] - 0.98) < 1e-12


def test_simulate_generic_method():
    r = run_cli("simulate", "dodecahedron", "--method", "generic")
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert data["max_abs_error"] < 1e-9
    assert len(data["circuit"]) == 20


def test_simulate_bad_state_exits_2():
    r = run_cli("simulate", "cyclic", "-m", "3", "--state", "0,0,2")
    assert r.returncode == 2


# ---------------------------------------------------------------- sample


def test_sample_reports_seed_and_counts():
    r = run_cli("sample", "cyclic", "-m", "4", "--shots", "1000", "--seed", "7")
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert data["seed"] == 7
    assert data["shots"] == 1000
    assert sum(data["counts"]) == 1000
    assert len(data["frequencies"]) == 4


def test_sample_is_deterministic():
    args = ("sample", "tetrahedron", "--shots", "2000")
    a = run_cli(*args)
    b = run_cli(*args)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["seed"] == 0x5EED


def test_sample_csv_has_seed_comment():
    r = run_cli(
        "sample", "cyclic", "-m", "2", "--shots", "100", "--format", "csv"
    )
    assert r.returncode == 0, r.stderr
    lines = r.stdout.strip().splitlines()
    assert lines[0].startswith("#")
    assert "seed" in lines[0]
    assert lines[1] == "outcome,count,frequency"
    assert len(lines) == 4


# ---------------------------------------------------------------- circuit


def test_circuit_text_output():
    r = run_cli("circuit", "cube")
    assert r.returncode == 0, r.stderr
    assert "cnot" in r.stdout
    assert "3 gates" in r.stdout


def test_circuit_json_merge_toggle():
    merged = run_cli(
        "circuit", "dihedral", "-m", "3", "--alpha", "0.6", "--beta", "0.8",
        "--format", "json",
    )
    plain = run_cli(
        "circuit", "dihedral", "-m", "3", "--alpha", "0.6", "--beta", "0.8",
        "--format", "json", "--no-merge",
    )
    merged_kinds = [g["kind"] for g in json.loads(merged.stdout)["gates"]]
    plain_kinds = [g["kind"] for g in json.loads(plain.stdout)["gates"]]
    assert merged_kinds == ["cu", "cu", "block"]
    assert plain_kinds == ["cnot", "cu", "cu", "block"]


def test_circuit_complex_beta():
    r = run_cli(
        "circuit", "dihedral", "-m", "2", "--alpha", "0.6", "--beta", "0.8j",
        "--format", "json",
    )
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    assert data["n_qubits"] == 2


# ---------------------------------------------------------------- bloch


def test_bloch_csv():
    r = run_cli("bloch", "cyclic", "-m", "4", "--format", "csv")
    assert r.returncode == 0, r.stderr
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "index,x,y,z"
    assert len(lines) == 5
    row = lines[1].split(",")
    assert abs(float(row[1]) - 1.0) < 1e-12
    assert abs(float(row[3])) < 1e-12


def test_bloch_json_octahedron():
    r = run_cli("bloch", "octahedron")
    assert r.returncode == 0, r.stderr
    data = json.loads(r.stdout)
    points = np.array(data["points"])
    assert points.shape == (6, 3)
    assert np.abs(np.linalg.norm(points, axis=1) - 1.0).max() < 1e-10


# ---------------------------------------------------------------- output file


def test_output_to_file(tmp_path):
    target = tmp_path / "out.json"
    r = run_cli("build", "cyclic", "-m", "2", "--output", str(target))
    assert r.returncode == 0, r.stderr
    assert r.stdout == ""
    data = json.loads(target.read_text())
    assert data["povm"]["n"] == 2
