#!/usr/bin/env python3
"""Benchmark the numba-accelerated kernels against the pure numpy fallback.

Runs each hot kernel under both backends by re-executing itself in a
subprocess with RIESZ_EQ_BACKEND set, then prints a side-by-side table.

    python benchmarks/bench_backends.py            # full comparison
    python benchmarks/bench_backends.py --inner    # (internal) one backend
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _bench_once():
    from rieszeq.backend import BACKEND
    from rieszeq.equilibrium import power_law_radius
    from rieszeq.fields import PowerLaw
    from rieszeq.oracle import (_particle_energy_grad, kernel_matrix,
                                particle_equilibrium_solve,
                                radial_equilibrium_solve)
    from rieszeq.sphere import RieszParams, h_profile_grid

    timings = {"backend": BACKEND}

    p_frac = RieszParams(5, 1.7)     # non-terminating series
    lam = np.geomspace(1e-3, 1e3, 10_000)
    h_profile_grid(p_frac, lam[:100])           # warm/compile
    t0 = time.perf_counter()
    h_profile_grid(p_frac, lam)
    timings["profile_grid_10k"] = time.perf_counter() - t0

    p10 = RieszParams(10, 2.0)
    radii = np.linspace(0.2, 2.0, 400)
    kernel_matrix(p10, radii[:40])              # warm
    t0 = time.perf_counter()
    kernel_matrix(p10, radii)
    timings["kernel_matrix_400"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    radial_equilibrium_solve(p10, PowerLaw(1.0, 4.0), 0.2, 2.0, 400, tol=1e-10)
    timings["radial_solve_400"] = time.perf_counter() - t0

    p4 = RieszParams(4, 0.5)
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(512, 4))
    _particle_energy_grad(p4, PowerLaw(1.0, 4.0), pts)   # warm
    t0 = time.perf_counter()
    for _ in range(50):
        _particle_energy_grad(p4, PowerLaw(1.0, 4.0), pts)
    timings["particle_grad_512_x50"] = time.perf_counter() - t0

    rstar = power_law_radius(p4, 1.0, 4.0)
    t0 = time.perf_counter()
    particle_equilibrium_solve(p4, PowerLaw(1.0, 4.0), 128, max_iters=300,
                               seed=0, init_scale=rstar)
    timings["particle_solve_128"] = time.perf_counter() - t0
    return timings


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--inner", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.inner:
        print(json.dumps(_bench_once()))
        return

    results = {}
    for backend in ("numba", "numpy"):
        env = dict(os.environ, RIESZ_EQ_BACKEND=backend)
        proc = subprocess.run([sys.executable, __file__, "--inner"], env=env,
                              capture_output=True, text=True)
        if proc.returncode != 0:
            if backend == "numba":
                print("numba backend unavailable; skipping", file=sys.stderr)
                continue
            print(proc.stderr, file=sys.stderr)
            raise SystemExit(1)
        results[backend] = json.loads(proc.stdout.strip().splitlines()[-1])

    keys = [k for k in next(iter(results.values())) if k != "backend"]
    width = max(len(k) for k in keys) + 2
    header = f"{'kernel':<{width}}" + "".join(f"{b:>12}" for b in results) \
        + ("     speedup" if len(results) == 2 else "")
    print(header)
    print("-" * len(header))
    for k in keys:
        row = f"{k:<{width}}"
        vals = []
        for b in results:
            v = results[b][k]
            vals.append(v)
            row += f"{v * 1000:>10.1f}ms"
        if len(vals) == 2 and vals[0] > 0:
            row += f"{vals[1] / vals[0]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
