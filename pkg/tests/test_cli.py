import csv
import json
import subprocess
import sys

import pytest

from weakcontract.cli import main


def run(*argv):
    return main([str(a) for a in argv])


def test_certify_example1(fixture_path, tmp_path):
    assert run("certify", fixture_path("example1.json"), "--out", tmp_path) == 0
    report = json.loads((tmp_path / "example1.report.json").read_text())
    assert report["verdict"] == "certified"
    assert report["argmin"] == [0.0, 0.0] and report["min_residual"] == 0
    assert report["n_points"] == 201 * 201


def test_certify_example2_exits_2(fixture_path, tmp_path):
    assert run("certify", fixture_path("example2.json"), "--out", tmp_path) == 2
    report = json.loads((tmp_path / "example2.report.json").read_text())
    assert report["verdict"] == "violated"
    hit = [v for v in report["violations"] if (v["x"], v["y"]) == (0.9, 1.0)]
    assert hit and hit[0]["residual"] == pytest.approx(-0.2, abs=1e-9)
    assert set(hit[0]) == {"x", "y", "lhs", "rhs", "m", "n", "residual"}


def test_certify_interior_fixture(fixture_path, tmp_path):
    assert run("certify", fixture_path("example2-interior.json"), "--out", tmp_path) == 0


def test_missing_config_exits_1(tmp_path, capsys):
    assert run("certify", tmp_path / "nope.json") == 1
    assert "not found" in capsys.readouterr().err


@pytest.mark.parametrize("config, message", [
    ({"T": "[x/4,", "gauges": {}}, "map definition"),
    ({"T": "[0, x]"}, "gauges"),
    ({"T": "[0, x]", "gauges": {"f": {"kind": "cubic"}, "phi": {"kind": "log1p"}}}, "unknown gauge"),
    ({"T": "[0, x]", "gauges": {"f": {"kind": "power", "p": 2}, "phi": {"kind": "log1p"}}}, "omega"),
    ({"T": "[0, x]", "space": {"kind": "euclidean"}}, "real-line"),
    ({"T": "[0, x]", "gauges": {"f": {"kind": "identity"}, "phi": {"kind": "log1p"}},
      "sampler": {"kind": "grid", "resolution": 1}}, "resolution"),
])
def test_bad_configs_exit_1(tmp_path, capsys, config, message):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(config))
    assert run("certify", path, "--out", tmp_path) == 1
    assert message in capsys.readouterr().err


def test_map_failure_exits_1(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"T": "[x, 0.5]", "gauges": {"f": {"kind": "identity"},
                                                            "phi": {"kind": "log1p"}}}))
    assert run("certify", path, "--out", tmp_path) == 1
    assert "x=0.505" in capsys.readouterr().err


def test_solve_example1(fixture_path, tmp_path):
    assert run("solve", fixture_path("example1.json"), "--out", tmp_path) == 0
    result = json.loads((tmp_path / "example1.result.json").read_text())
    (z,) = result["endpoints"]
    assert abs(z) <= 1e-8 and result["unique"]
    rows = list(csv.DictReader((tmp_path / "example1.trace.csv").open()))
    assert [float(r["x"]) for r in rows[:5]] == pytest.approx([1, 0.5, 0.1, 0.05, 0.01], rel=1e-15)


def test_solve_example2_two_end_points(fixture_path, tmp_path):
    assert run("solve", fixture_path("example2.json"), "--out", tmp_path) == 0
    result = json.loads((tmp_path / "example2.result.json").read_text())
    assert not result["unique"]
    z0, z1 = result["endpoints"]
    assert abs(z0) <= 1e-8 and z1 == 1.0
    assert (tmp_path / "example2.trace.0.csv").exists()
    assert (tmp_path / "example2.trace.1.csv").exists()


def test_solve_truncated_exits_3(fixture_path, tmp_path):
    assert run("solve", fixture_path("example1.json"), "--max-iter", 3, "--out", tmp_path) == 3
    result = json.loads((tmp_path / "example1.result.json").read_text())
    assert result["runs"][0]["converged"] is False
    assert result["flagged"] == [1.0]


def test_flags_override_config(fixture_path, tmp_path):
    assert run("solve", fixture_path("example1.json"), "--strategy", "midpoint",
               "--tol", "1e-6", "--out", tmp_path) == 0
    result = json.loads((tmp_path / "example1.result.json").read_text())
    assert result["runs"][0]["tol"] == 1e-6


@pytest.mark.parametrize("spec, cls, code, cond", [
    ('{"kind":"linear","k":0.25}', "phi", 0, None),
    ('{"kind":"power","p":2}', "phi", 2, "(iii)"),
    ('{"kind":"power","p":2}', "omega", 2, "(iv)"),
    ('{"kind":"quad-scale","c":2}', "psi", 0, None),
])
def test_gauge_check(capsys, spec, cls, code, cond):
    assert run("gauge-check", spec, "--class", cls) == code
    report = json.loads(capsys.readouterr().out)
    assert report["failed_condition"] == cond


def test_gauge_check_unknown_kind(capsys):
    assert run("gauge-check", '{"kind":"cubic"}', "--class", "phi") == 1
    assert run("gauge-check", "not json", "--class", "phi") == 1


def test_usage_error_exits_1():
    assert run("frobnicate") == 1
    assert run("gauge-check", '{"kind":"log1p"}') == 1


def test_repeated_seeded_runs_are_byte_identical(fixture_path, tmp_path):
    cfg = json.loads(fixture_path("example2.json").read_text())
    cfg["sampler"] = {"kind": "random", "count": 2000, "seed": 0}
    path = tmp_path / "rnd.json"
    path.write_text(json.dumps(cfg))
    outs = []
    for i in range(2):
        out = tmp_path / f"run{i}"
        run("certify", path, "--seed", 5, "--out", out)
        run("solve", path, "--seed", 5, "--strategy", "random", "--out", out)
        outs.append([(out / n).read_bytes() for n in
                     ("rnd.report.json", "rnd.result.json", "rnd.trace.0.csv")])
    assert outs[0] == outs[1]
    assert json.loads(outs[0][0])["sampler"]["seed"] == 5


def test_module_entry_point(fixture_path, tmp_path):
    proc = subprocess.run([sys.executable, "-m", "weakcontract", "gauge-check",
                           '{"kind":"log1p"}', "--class", "omega"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "pass"
