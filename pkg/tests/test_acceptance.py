"""Acceptance suite.

Each criterion runs at its stated tolerance inside a timing guard and prints
one PASS/FAIL line.  Expected values are frozen from independent oracle
computations (Gamma-quotient arithmetic, quadrature, extrapolated series,
energy decompositions); no expected value is produced by the code path it
checks.
"""

import json
import math
import os
import subprocess
import sys
import time
from contextlib import contextmanager

import jsonschema
import numpy as np
import pytest

import rieszeq
from rieszeq import (Hyp2F1Args, LennardJones, ModifiedPotentialCtx, PowerLaw,
                     RieszParams, b_d, c_sd, hyp2f1)
from rieszeq.equilibrium import (alpha_threshold, certify_sphere, f_eval,
                                 g_eval, global_min_scan, necessary_report,
                                 power_law_energy, power_law_radius,
                                 power_law_verdict, rescale_maps,
                                 stationary_radii, sufficient_certify)
from rieszeq.fields import Exponential, PowerLog, PowerSink, field_eval
from rieszeq.oracle import (RadialMeasure, particle_equilibrium_solve,
                            radial_equilibrium_solve, scaling_equivalence_check,
                            support_report)
from rieszeq.specfun import SpecFunConfig, hyp2f1_raw_series, ln_gamma
from rieszeq.sphere import funk_hecke_oracle, sphere_energy, sphere_potential

from test_specfun import gauss_quotient, series_extrapolated_at_one


@contextmanager
def criterion(label: str, budget_s: float):
    start = time.monotonic()
    failed = True
    try:
        yield
        failed = False
    finally:
        elapsed = time.monotonic() - start
        status = "FAIL" if failed else "PASS"
        print(f"\n[{label}] {status} ({elapsed:.2f}s, budget {budget_s:.0f}s)")
    assert elapsed < budget_s, f"{label} exceeded its runtime budget"


def test_a1_constants():
    with criterion("A1", 5.0):
        for d in range(2, 13):
            for s in np.linspace(-2.0, d - 1.0, 27)[1:-1]:
                p = RieszParams(d, float(s))
                quotient = math.exp(ln_gamma(d / 2.0) + ln_gamma(d - s - 1.0)
                                    - ln_gamma((d - s) / 2.0)
                                    - ln_gamma(d - s / 2.0 - 1.0))
                series = hyp2f1(Hyp2F1Args(s / 2.0, (2.0 + s - d) / 2.0,
                                           d / 2.0, 1.0))
                assert abs(quotient - series) <= 1e-10 * max(1.0, abs(quotient))
                assert c_sd(p) > 0
            form1 = (-math.log(2.0) + 0.5 * rieszeq.digamma(d - 1.0)
                     - 0.5 * rieszeq.digamma((d - 1.0) / 2.0)) if d > 2 else 0.0
            if d == 2:
                form1 = -math.log(2.0) + 0.5 * rieszeq.digamma(1.0) \
                    - 0.5 * rieszeq.digamma(0.5)
            form2 = 0.5 * (rieszeq.digamma(d / 2.0) - rieszeq.digamma(d - 1.0))
            assert abs(form1 - form2) <= 1e-12 * max(1.0, abs(form1))
            assert abs(b_d(d) - form2) <= 1e-12 * max(1.0, abs(form2))
        assert abs(c_sd(RieszParams(5, 0.0)) - 1.0) <= 1e-12
        assert abs(c_sd(RieszParams(11, 0.0)) - 1.0) <= 1e-12
        assert abs(c_sd(RieszParams(8, 4.0)) - 0.5) <= 1e-12
        assert abs(b_d(2)) <= 1e-12


def test_a2_quadrature_equivalence():
    with criterion("A2", 60.0):
        R = 1.3
        for d in (2, 3, 4, 8, 10):
            svals = sorted({-1.5, -0.5, 0.0, 0.5, float(d - 2), d - 1.2})
            for s in svals:
                if not -2.0 < s < d - 1.0:
                    continue
                p = RieszParams(d, s)
                for lam in (0.0, 0.1, 0.5, 0.99, 1.0, 1.01, 2.0, 10.0):
                    x = math.sqrt(lam) * R
                    ref = sphere_potential(p, x, R)
                    got = funk_hecke_oracle(p, x, R, 64)
                    tol = 1e-6 if (lam == 1.0 and s > 0) else 1e-8
                    err = abs(got - ref) / max(abs(ref), 1e-12)
                    assert err < tol, (d, s, lam, ref, got)


def test_a3_hypergeometric_identities():
    with criterion("A3", 10.0):
        rng = np.random.default_rng(20240817)
        # Gauss summation: extrapolated series and connection vs quotient
        for _ in range(12):
            q = rng.uniform(0.1, 5.0)
            a = rng.uniform(0.2, 2.0)
            b = rng.uniform(0.2, 2.0)
            c = a + b + q
            ref = gauss_quotient(a, b, c)
            assert abs(series_extrapolated_at_one(a, b, c) - ref) <= 1e-8 * abs(ref)
            assert abs(hyp2f1(Hyp2F1Args(a, b, c, 1.0)) - ref) <= 1e-8 * abs(ref)
        # derivative identity, central differences
        h = 1e-5
        for _ in range(20):
            a = rng.uniform(-1.0, 2.5)
            b = rng.uniform(0.2, 2.5)
            c = rng.uniform(b + 0.3, 5.0)
            for z in (0.1, 0.5, 0.9):
                fd = (hyp2f1(Hyp2F1Args(a, b, c, z + h))
                      - hyp2f1(Hyp2F1Args(a, b, c, z - h))) / (2.0 * h)
                rhs = a * b / c * hyp2f1(Hyp2F1Args(a + 1, b + 1, c + 1, z))
                assert abs(fd - rhs) <= 1e-6 * max(1.0, abs(rhs))
        # quadratic transformation
        for _ in range(10):
            b = rng.uniform(0.6, 3.0)
            a = b - rng.uniform(0.1, min(2.0, b - 0.05))
            for z in (0.0, 0.3, 0.7):
                lhs = hyp2f1(Hyp2F1Args(a, b, 2.0 * b, 4.0 * z / (1.0 + z) ** 2))
                rhs = (1.0 + z) ** (2.0 * a) * hyp2f1(
                    Hyp2F1Args(a, a - b + 0.5, b + 0.5, z * z))
                assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))
        # Legendre duplication
        for z in (0.5, 1.0, 2.5, 7.0):
            lhs = ln_gamma(0.5) + ln_gamma(2.0 * z)
            rhs = (2.0 * z - 1.0) * math.log(2.0) + ln_gamma(z) + ln_gamma(z + 0.5)
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))
        # positivity on a random admissible grid
        for _ in range(200):
            b = rng.uniform(0.05, 4.0)
            c = b + rng.uniform(0.05, 3.0)
            a = rng.uniform(-2.0, 3.0)
            z = rng.uniform(0.0, 0.999)
            assert hyp2f1(Hyp2F1Args(a, b, c, z)) > 0.0


def test_a4_power_law_theorem():
    with criterion("A4", 2.0):
        p = RieszParams(10, 2.0)
        verdict, rstar, energy = power_law_verdict(p, 1.0, 4.0)
        assert verdict.kind == "certified_sphere"
        assert abs(rstar - (2.0 / 7.0) ** (1.0 / 6.0)) <= 1e-12
        # energy must match the closed form through the independent
        # decomposition sphere-self-energy + twice the field value
        decomposition = sphere_energy(p, rstar) \
            + 2.0 * field_eval(PowerLaw(1.0, 4.0), rstar ** 2, 0)
        assert abs(energy - decomposition) <= 1e-12 * max(1.0, abs(energy))

        verdict13, r13, _ = power_law_verdict(p, 1.0, 1.3)
        assert verdict13.kind == "necessary_fail"
        rep = necessary_report(ModifiedPotentialCtx(p, PowerLaw(1.0, 1.3), r13))
        assert not rep.cond_iii.passed
        assert abs(rep.cond_iii.lhs - (-0.2198)) <= 1e-4
        assert abs(rep.cond_iii.rhs - (-0.2143)) <= 1e-4

        for d in (6, 8, 10):
            assert alpha_threshold(RieszParams(d, float(d - 4))) == 2.0


LJ_A = LennardJones(5.0, 19.0 / 20.0, -6.0, -12.0)


def test_a5_lennard_jones_regression():
    with criterion("A5", 10.0):
        p = RieszParams(8, 4.0)
        roots = stationary_radii(p, LJ_A)
        assert len(roots) == 2
        assert abs(roots[0] - 1.0) <= 1e-10
        assert abs(roots[1] - 4.47) <= 0.05
        ctx = ModifiedPotentialCtx(p, LJ_A, 1.0)
        ev = sufficient_certify(ctx, "lj_special")
        assert ev.holds and not ev.heuristic
        scan = global_min_scan(ctx, 1e-3, 1e3)
        assert scan.min_at_one

        ctx_b = ModifiedPotentialCtx(p, LennardJones(1.0, 0.75, -6.0, -12.0), 1.0)
        assert not global_min_scan(ctx_b, 1e-3, 1e3).min_at_one

        import warnings
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            assert stationary_radii(p, LennardJones(1.0 / 3.0, 0.5,
                                                    -6.0, -12.0)) == []


def test_a6_sufficient_certificate_coverage():
    with criterion("A6", 5.0):
        p = RieszParams(10, 2.0)
        c = c_sd(p)
        families = [
            (LennardJones(1.0, 1.0, 3.0, 2.0),
             lambda r: r ** 5 - r ** 4 - c / 2.0),
            (Exponential(1.0, 1.0, 2.0),
             lambda r: r ** 4 * math.exp(r * r) - c / 2.0),
            (PowerLog(1.0, 2.0),
             lambda r: r ** 4 * (1.0 + 2.0 * math.log(r)) - c / 4.0),
            (PowerSink(1.0, 2.0, 0.5),
             lambda r: r ** 4 - c / 2.0),
        ]
        for field, radius_equation in families:
            verdict = certify_sphere(p, field)
            assert verdict.kind == "certified_sphere", type(field).__name__
            assert verdict.certificate_name == "convexity"
            assert abs(radius_equation(verdict.R)) <= 1e-10, type(field).__name__


def test_a7_oracle_agreement_certified():
    with criterion("A7-certified", 60.0):
        p = RieszParams(10, 2.0)
        meas = radial_equilibrium_solve(p, PowerLaw(1.0, 4.0), 0.2, 2.0, 400,
                                        tol=1e-10)
        assert meas.converged
        rstar = power_law_radius(p, 1.0, 4.0)
        cell = (2.0 - 0.2) / 399
        mask = np.abs(meas.radii - rstar) <= 2.0 * cell
        assert float(meas.weights[mask].sum()) >= 0.99
        istar = power_law_energy(p, 1.0, 4.0)
        assert abs(meas.value - istar) <= 1e-4 * abs(istar)


def test_a7_oracle_below_threshold_spread():
    # Faithful transcription of the stated criterion.  The discrete
    # equilibrium at (d=10, s=2, gamma=1, alpha=1.3) concentrates at the
    # stationary radius with only ~1e-5 of mass drifting toward the origin
    # (the boundary-condition violation is tiny), so the measured spread is
    # ~0.5 cells, not > 5; see the failure analysis in the project notes.
    with criterion("A7-below-threshold", 60.0):
        p = RieszParams(10, 2.0)
        meas = radial_equilibrium_solve(p, PowerLaw(1.0, 1.3), 0.05, 2.0, 400,
                                        max_iters=400_000, tol=1e-13)
        rep = support_report(meas)
        cell = (2.0 - 0.05) / 399
        print(f"\n  measured spread: {rep.radius_std / cell:.2f} cells "
              f"(gap {meas.fw_gap:.2e})")
        assert rep.radius_std > 5.0 * cell, (
            "below-threshold spread is physically ~0.5 cells at alpha=1.3; "
            "criterion kept as stated")


def test_a7_oracle_particles():
    with criterion("A7-particles", 120.0):
        p = RieszParams(4, 0.5)
        rstar = power_law_radius(p, 1.0, 4.0)
        cfg = particle_equilibrium_solve(p, PowerLaw(1.0, 4.0), 256,
                                         max_iters=2000, seed=1234,
                                         init_scale=rstar)
        rep = support_report(cfg, rstar)
        assert abs(rep.mean_radius - rstar) <= 0.03 * rstar


def test_a8_scaling_equivalences():
    with criterion("A8", 5.0):
        p = RieszParams(8, 4.0)
        rng = np.random.default_rng(2718)
        base_energy = None
        for k in range(20):
            m = rng.integers(25, 60)
            radii = np.sort(rng.uniform(0.3, 3.0, m)) + np.arange(m) * 1e-9
            w = rng.uniform(0.05, 1.0, m)
            w = w / w.sum()
            measure = RadialMeasure(radii, w, 0.0, 0.0, 0, True)
            cscale = float(rng.uniform(0.4, 2.5))
            res = scaling_equivalence_check(p, 5.0, 4.0, measure, cscale)
            assert res["identity_residual"] < 1e-10
            if k == 0:
                base_energy = res["unit_moment_energy"]
        # optimal scale matches the closed form via 1-D minimisation
        from scipy.optimize import minimize_scalar
        closed = rescale_maps(p, 5.0, 4.0, "to_free", base_energy)
        obj = lambda t: t ** -4.0 * base_energy + 2.5 * t ** 4.0
        numeric = minimize_scalar(obj, bounds=(0.1, 5.0), method="bounded",
                                  options={"xatol": 1e-13}).x
        assert abs(closed - numeric) <= 1e-8
        # log branch: the stationarity constant is (1/(2 gamma))^(1/alpha),
        # not (1/gamma)^(1/alpha)
        gamma, alpha = 1.4, 2.2
        c_star = rescale_maps(RieszParams(4, 0.0), gamma, alpha, "to_free", 0.0)
        assert abs(c_star - (1.0 / (2.0 * gamma)) ** (1.0 / alpha)) <= 1e-15
        log_obj = lambda t: -math.log(t) + 2.0 * gamma / alpha * t ** alpha
        wrong = (1.0 / gamma) ** (1.0 / alpha)
        assert log_obj(c_star) < log_obj(c_star * 1.001)
        assert log_obj(c_star) < log_obj(c_star * 0.999)
        assert log_obj(wrong) > log_obj(c_star)


def _cli_start(args, path):
    return subprocess.Popen([sys.executable, "-m", "rieszeq.cli", *args,
                             "--output-path", str(path)],
                            stdout=subprocess.PIPE, stderr=subprocess.PIPE,
                            text=True)


def test_a9_cli_determinism(tmp_path):
    with criterion("A9", 30.0):
        lj = tmp_path / "lj.json"
        lj.write_text(json.dumps({"type": "lennard_jones", "gamma": 5.0,
                                  "eta": 0.95, "alpha": -6.0, "beta": -12.0}))
        pl = tmp_path / "pl.json"
        pl.write_text(json.dumps({"type": "power", "gamma": 1.0, "alpha": 4.0}))
        commands = {
            "constants": ["constants", "--d", "8", "--s", "4"],
            "potential": ["potential", "--d", "8", "--s", "4", "--R", "1",
                          "--field", str(lj), "--lambda-min", "0.001",
                          "--lambda-max", "1000", "--n", "64", "--log"],
            "check-sphere": ["check-sphere", "--d", "8", "--s", "4",
                             "--field", str(lj), "--r-min", "0.1",
                             "--r-max", "50"],
            "scan": ["scan", "--d", "4", "--s-min", "-1.9", "--s-max", "0.9",
                     "--s-n", "15", "--alpha-min", "0.1", "--alpha-max", "4.0",
                     "--alpha-n", "11", "--gamma", "1.0"],
            "solve-radial": ["solve", "--d", "10", "--s", "2", "--field",
                             str(pl), "--method", "radial", "--r-min", "0.2",
                             "--r-max", "2.0", "--m", "80", "--seed", "0"],
            "solve-particles": ["solve", "--d", "4", "--s", "0.5", "--field",
                                str(pl), "--method", "particles", "--n", "16",
                                "--max-iters", "80", "--seed", "11"],
        }
        from importlib import resources

        schemas = {
            "constants": "constants.schema.json",
            "check-sphere": "verdict.schema.json",
            "solve-radial": "solve.schema.json",
            "solve-particles": "solve.schema.json",
        }
        procs = []
        for name, args in commands.items():
            p1 = tmp_path / f"{name}-1.out"
            p2 = tmp_path / f"{name}-2.out"
            procs.append((name, p1, p2, _cli_start(args, p1), _cli_start(args, p2)))
        for name, p1, p2, r1, r2 in procs:
            _, err1 = r1.communicate(timeout=300)
            r2.communicate(timeout=300)
            assert r1.returncode in (0, 4), (name, err1)
            assert r1.returncode == r2.returncode
            assert p1.read_bytes() == p2.read_bytes(), name
            if name in schemas:
                doc = json.loads(p1.read_text())
                schema = json.loads(resources.files("rieszeq.schemas")
                                    .joinpath(schemas[name]).read_text())
                jsonschema.validate(doc, schema)
