"""CLI behaviour: outputs, determinism, exit codes, schema validity."""

import json
import math
import sys
from importlib import resources
from subprocess import run

import jsonschema
import pytest

from rieszeq.cli import run as cli_run


def invoke(args, capsys):
    code = cli_run(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture()
def lj_field(tmp_path):
    path = tmp_path / "lj.json"
    path.write_text(json.dumps({"type": "lennard_jones", "gamma": 5.0,
                                "eta": 0.95, "alpha": -6.0, "beta": -12.0}))
    return str(path)


@pytest.fixture()
def power_field(tmp_path):
    path = tmp_path / "pl.json"
    path.write_text(json.dumps({"type": "power", "gamma": 1.0, "alpha": 4.0}))
    return str(path)


def load_schema(name):
    text = resources.files("rieszeq.schemas").joinpath(name).read_text()
    return json.loads(text)


class TestConstants:
    def test_spot_value(self, capsys):
        code, out, _ = invoke(["constants", "--d", "8", "--s", "4"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["c_sd"] == 0.5
        assert doc["alpha_threshold"] == 2.0
        jsonschema.validate(doc, load_schema("constants.schema.json"))

    def test_log_branch_includes_b(self, capsys):
        code, out, _ = invoke(["constants", "--d", "4", "--s", "0"], capsys)
        doc = json.loads(out)
        assert doc["b_d"] == pytest.approx(-0.25)

    def test_out_of_window(self, capsys):
        code, _, err = invoke(["constants", "--d", "4", "--s", "3.9"], capsys)
        assert code == 3
        assert "error" in err


class TestPotential:
    def test_csv_shape(self, capsys, lj_field):
        code, out, _ = invoke(["potential", "--d", "8", "--s", "4", "--R", "1",
                               "--field", lj_field, "--lambda-min", "0.5",
                               "--lambda-max", "2.0", "--n", "4"], capsys)
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "lambda,f,f_prime,f_second"
        assert len(lines) == 5
        row1 = lines[2].split(",")
        assert float(row1[0]) == pytest.approx(1.0)
        assert float(row1[1]) == pytest.approx(-0.3125, rel=1e-12)
        assert abs(float(row1[2])) < 1e-10

    def test_bad_range(self, capsys, lj_field):
        code, _, err = invoke(["potential", "--d", "8", "--s", "4", "--R", "1",
                               "--field", lj_field, "--lambda-min", "2",
                               "--lambda-max", "1", "--n", "4"], capsys)
        assert code == 3


class TestCheckSphere:
    def test_lj_reference(self, capsys, lj_field):
        code, out, _ = invoke(["check-sphere", "--d", "8", "--s", "4",
                               "--field", lj_field, "--r-min", "0.1",
                               "--r-max", "50"], capsys)
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, load_schema("verdict.schema.json"))
        assert doc["verdict"]["kind"] == "certified_sphere"
        assert doc["verdict"]["R"] == pytest.approx(1.0, abs=1e-9)
        assert any(abs(r - 4.47) < 0.05 for r in doc["radii"])

    def test_missing_field_file(self, capsys):
        code, _, err = invoke(["check-sphere", "--d", "8", "--s", "4",
                               "--field", "/nonexistent.json"], capsys)
        assert code == 3

    def test_bad_field_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"type": "power", "gamma": 1.0,
                                   "alpha": 4.0, "wat": 1}))
        code, _, err = invoke(["check-sphere", "--d", "10", "--s", "2",
                               "--field", str(bad)], capsys)
        assert code == 3
        assert "unknown keys" in err


class TestScan:
    def test_region_consistency(self, capsys):
        code, out, _ = invoke(["scan", "--d", "4", "--s-min", "-1.9",
                               "--s-max", "0.9", "--s-n", "7",
                               "--alpha-min", "0.2", "--alpha-max", "4.0",
                               "--alpha-n", "9", "--gamma", "1.0"], capsys)
        assert code == 0
        from rieszeq.equilibrium import alpha_threshold
        from rieszeq.sphere import RieszParams, c_sd
        lines = out.strip().split("\n")
        assert lines[0] == "s,alpha,in_region,R_star"
        for line in lines[1:]:
            s_str, a_str, flag, rstar = line.split(",")
            s, a = float(s_str), float(a_str)
            if flag == "1":
                p = RieszParams(4, s)
                assert a >= alpha_threshold(p) - 1e-12
                expected = (c_sd(p) / 2.0) ** (1.0 / (a + s))
                assert float(rstar) == pytest.approx(expected, rel=1e-15)
            else:
                assert rstar == ""

    def test_flag_error(self, capsys):
        code, _, _ = invoke(["scan", "--d", "4", "--s-min", "-1.9"], capsys)
        assert code == 2


class TestSolve:
    def test_radial_json(self, capsys, power_field):
        code, out, _ = invoke(["solve", "--d", "10", "--s", "2",
                               "--field", power_field, "--method", "radial",
                               "--r-min", "0.2", "--r-max", "2.0",
                               "--m", "80", "--ref-radius", "0.8116"], capsys)
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, load_schema("solve.schema.json"))
        assert doc["converged"]
        assert doc["support"]["sphere_score"] > 0.99

    def test_particles_json(self, capsys, power_field):
        code, out, _ = invoke(["solve", "--d", "4", "--s", "0.5",
                               "--field", power_field, "--method", "particles",
                               "--n", "24", "--max-iters", "150",
                               "--seed", "5"], capsys)
        doc = json.loads(out)
        jsonschema.validate(doc, load_schema("solve.schema.json"))
        assert len(doc["measure"]["points"]) == 24


class TestDeterminismAndFiles:
    def test_atomic_write_and_bytes(self, tmp_path, lj_field):
        out1 = tmp_path / "a.json"
        out2 = tmp_path / "b.json"
        for path in (out1, out2):
            code = cli_run(["constants", "--d", "8", "--s", "4",
                            "--output-path", str(path)])
            assert code == 0
        assert out1.read_bytes() == out2.read_bytes()
        leftovers = [f for f in tmp_path.iterdir()
                     if f.name.startswith(".rieszeq-")]
        assert not leftovers

    def test_scan_threads_deterministic(self, tmp_path, monkeypatch):
        args = ["scan", "--d", "4", "--s-min", "-1.5", "--s-max", "0.5",
                "--s-n", "11", "--alpha-min", "0.5", "--alpha-max", "3.0",
                "--alpha-n", "7", "--gamma", "1.0"]
        monkeypatch.setenv("RIESZ_EQ_THREADS", "4")
        p1 = tmp_path / "s1.csv"
        cli_run(args + ["--output-path", str(p1)])
        monkeypatch.setenv("RIESZ_EQ_THREADS", "1")
        p2 = tmp_path / "s2.csv"
        cli_run(args + ["--output-path", str(p2)])
        assert p1.read_bytes() == p2.read_bytes()


def test_entry_point_subprocess(lj_field):
    proc = run([sys.executable, "-m", "rieszeq.cli", "constants",
                "--d", "10", "--s", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["c_sd"] == pytest.approx(4.0 / 7.0)
