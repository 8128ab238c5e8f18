"""CLI surface: commands, exit codes, determinism."""

import json

import numpy as np
import pytest

from trivolve.cli import main
from trivolve.serialization import algebra_to_json, array_to_json, map_to_json


@pytest.fixture()
def spec_files(tmp_path, c2, remark_tau):
    algebra_path = tmp_path / "c2.json"
    algebra_path.write_text(json.dumps(algebra_to_json(c2)))
    map_path = tmp_path / "tau.json"
    map_path.write_text(json.dumps(map_to_json(remark_tau)))
    return str(algebra_path), str(map_path)


def run_cli(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(args + ["--format", "json", "--out", str(out)])
    return code, json.loads(out.read_text())


def test_check_reports_proper_trivolution(spec_files, tmp_path):
    algebra, tau = spec_files
    code, report = run_cli(["check", "--algebra", algebra, "--map", tau], tmp_path)
    assert code == 0
    assert report["classification"] == "trivolution_proper"


def test_check_involution(tmp_path, m2, m2_star):
    algebra_path = tmp_path / "m2.json"
    algebra_path.write_text(json.dumps(algebra_to_json(m2)))
    map_path = tmp_path / "star.json"
    map_path.write_text(json.dumps(map_to_json(m2_star)))
    code, report = run_cli(["check", "--algebra", str(algebra_path),
                            "--map", str(map_path)], tmp_path)
    assert code == 0
    assert report["classification"] == "involution"


def test_decompose(spec_files, tmp_path):
    algebra, tau = spec_files
    code, report = run_cli(["decompose", "--algebra", algebra, "--map", tau], tmp_path)
    assert code == 0
    assert report["decomposition"]["p"] == [[[1.0, 0.0], [0.0, 0.0]],
                                            [[0.0, 0.0], [0.0, 0.0]]]
    assert max(report["residuals"].values()) <= 1e-9


def test_extend_lists_all_families(spec_files, tmp_path):
    algebra, tau = spec_files
    code, report = run_cli(["extend", "--algebra", algebra, "--map", tau], tmp_path)
    assert code == 0
    families = sorted(e["family"] for e in report["extensions"])
    assert families == ["type_I", "type_I", "type_II"]
    norms = sorted(e["norm_of_extension"] for e in report["extensions"])
    assert norms == [1.0, 1.0, 2.0]


def test_parse_error_exit_code(tmp_path):
    structure = np.zeros((2, 2, 2))
    structure[0, 0, 0] = 1.0
    structure[0, 1, 0] = 1.0
    structure[1, 0, 0] = 2.0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 2, "structure": array_to_json(structure)}))
    tau = tmp_path / "tau.json"
    tau.write_text(json.dumps({"matrix": array_to_json(np.eye(2)), "conjugating": True}))
    code, report = run_cli(["check", "--algebra", str(bad), "--map", str(tau)], tmp_path)
    assert code == 2
    assert report["error"] == "ParseError"
    assert "associativity" in report["message"]


def test_certification_failure_exit_code(spec_files, tmp_path):
    algebra, _ = spec_files
    linear = tmp_path / "linear.json"
    linear.write_text(json.dumps({"matrix": array_to_json(np.eye(2)),
                                  "conjugating": False}))
    code, report = run_cli(["decompose", "--algebra", algebra,
                            "--map", str(linear)], tmp_path)
    assert code == 1
    assert report["error"] == "NotATrivolution"
    assert "law" in report


def test_missing_flag_is_usage_error(tmp_path):
    code, report = run_cli(["check"], tmp_path)
    assert code == 2


def test_spectra_inclusion(spec_files, tmp_path):
    algebra, tau = spec_files
    code, report = run_cli(["spectra", "--algebra", algebra, "--map", tau,
                            "--element", "[[2, 1], [5, 0]]"], tmp_path)
    assert code == 0
    assert report["inclusion"]["included"]
    assert report["inclusion"]["range_spectrum"] == [[2.0, -1.0]]


def test_arens_and_search(tmp_path, z2, c3):
    z2_path = tmp_path / "z2.json"
    z2_path.write_text(json.dumps(algebra_to_json(z2)))
    code, report = run_cli(["arens", "--algebra", str(z2_path)], tmp_path)
    assert code == 0
    assert report["regular"] is True

    c3_path = tmp_path / "c3.json"
    c3_path.write_text(json.dumps(algebra_to_json(c3)))
    code, report = run_cli(["search", "--algebra", str(c3_path),
                            "--family", "function"], tmp_path, name="search.json")
    assert code == 0
    assert report["count"] == 11


def test_tim_with_involution(tmp_path, z2, z2_involution):
    z2_path = tmp_path / "z2.json"
    z2_path.write_text(json.dumps(algebra_to_json(z2)))
    theta_path = tmp_path / "theta.json"
    theta_path.write_text(json.dumps(map_to_json(z2_involution)))
    code, report = run_cli(["tim", "--algebra", str(z2_path),
                            "--map", str(theta_path)], tmp_path)
    assert code == 0
    assert report["characters"] == 2
    for entry in report["means"]:
        assert entry["affine_dim"] == 0
        assert entry["obstruction"]["unique"]


def test_seed_env_override(tmp_path, monkeypatch, spec_files):
    algebra, tau = spec_files
    monkeypatch.setenv("TRIVOLVE_SEED", "123")
    out = tmp_path / "env.json"
    code = main(["extend", "--algebra", algebra, "--map", tau,
                 "--seed", "7", "--format", "json", "--out", str(out)])
    assert code == 0  # seed override must not break anything


def test_suite_deterministic(tmp_path):
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    assert main(["suite", "--seed", "3", "--format", "json", "--out", str(first)]) == 0
    assert main(["suite", "--seed", "3", "--format", "json", "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
