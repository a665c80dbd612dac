"""Secondary acceptance: images render from primary outputs without error and
the threshold overlay matches the closed-form branches."""

import json
import subprocess
import sys

import pytest

from rieszeq_figures import render_profile, render_scan, threshold_branches


def rieszeq_cli(args, out_path):
    proc = subprocess.run([sys.executable, "-m", "rieszeq.cli", *args,
                           "--output-path", str(out_path)],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    return out_path


def test_b1_render_from_primary_outputs(tmp_path):
    # scan over the power-law region (the sharp-threshold reproduction grid)
    scan_csv = rieszeq_cli(["scan", "--d", "10", "--s-min", "-1.9",
                            "--s-max", "6.9", "--s-n", "30",
                            "--alpha-min", "0.1", "--alpha-max", "4.0",
                            "--alpha-n", "30", "--gamma", "1.0"],
                           tmp_path / "scan10.csv")
    scan_png = tmp_path / "scan10.png"
    render_scan(str(scan_csv), str(scan_png), d=10)
    assert scan_png.exists() and scan_png.stat().st_size > 0

    # profile of the reference attractive-repulsive regression field
    field = tmp_path / "lj.json"
    field.write_text(json.dumps({"type": "lennard_jones", "gamma": 5.0,
                                 "eta": 0.95, "alpha": -6.0, "beta": -12.0}))
    prof_csv = rieszeq_cli(["potential", "--d", "8", "--s", "4", "--R", "1",
                            "--field", str(field), "--lambda-min", "0.001",
                            "--lambda-max", "1000", "--n", "300", "--log"],
                           tmp_path / "profile.csv")
    prof_png = tmp_path / "profile.png"
    render_profile(str(prof_csv), str(prof_png))
    assert prof_png.exists() and prof_png.stat().st_size > 0

    # the overlay curves agree with the primary's threshold at 5 sampled s
    for s in (-1.5, 0.0, 1.5, 3.0, 5.0):
        proc = subprocess.run([sys.executable, "-m", "rieszeq.cli", "constants",
                               "--d", "10", "--s", str(s)],
                              capture_output=True, text=True)
        doc = json.loads(proc.stdout)
        assert max(threshold_branches(10, s)) == pytest.approx(
            doc["alpha_threshold"], abs=1e-9)
