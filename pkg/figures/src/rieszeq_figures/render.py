"""Render rieszeq CSV outputs into figure files.

These scripts are read-only consumers of the CLI's CSV schemas.  The only
quantity computed locally is the pair of threshold curves overlaid on the
region heatmap (closed forms in log-gamma/digamma), which the scan CSV does
not carry.
"""

from __future__ import annotations

import csv
import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


class SchemaError(ValueError):
    """Input file does not match the expected CSV schema."""


SCAN_HEADER = ["s", "alpha", "in_region", "R_star"]
PROFILE_HEADER = ["lambda", "f", "f_prime", "f_second"]
RESIDUAL_HEADER = ["R", "residual"]


def _read_csv(path: str, header: list[str]) -> list[list[str]]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != header:
        raise SchemaError(f"{path}: expected header {','.join(header)}")
    return rows[1:]


def _digamma(x: float) -> float:
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    tail = inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0
                   - inv2 * (1.0 / 240.0 - inv2 / 132.0))))
    return acc + math.log(x) - 0.5 * inv - tail


def _c_sd(d: int, s: float) -> float:
    return math.exp(math.lgamma(d / 2.0) + math.lgamma(d - s - 1.0)
                    - math.lgamma((d - s) / 2.0) - math.lgamma(d - s / 2.0 - 1.0))


def threshold_branches(d: int, s: float) -> tuple[float, float]:
    """The two competing exponent bounds whose maximum is the sharp threshold."""
    if s == 0.0:
        bd = 0.5 * (_digamma(d / 2.0) - _digamma(d - 1.0))
        branch1 = -1.0 / (2.0 * bd)
    else:
        c = _c_sd(d, s)
        branch1 = s * c / (2.0 - 2.0 * c)
    branch2 = 2.0 - (s + 2.0) * (d - s - 4.0) / (2.0 * (d - s - 3.0))
    return branch1, branch2


def render_scan(csv_path: str, out_image_path: str, d: int | None = None) -> None:
    """Heatmap of the certified sphere radius over (s, alpha), with the two
    threshold curves overlaid, from a scan CSV.

    The CSV does not carry the dimension, so pass d explicitly for the curve
    overlay; when omitted, it is inferred by fitting the empirical region
    boundary (overlay skipped if no region cells exist).
    """
    rows = _read_csv(csv_path, SCAN_HEADER)
    svals = sorted({float(r[0]) for r in rows})
    avals = sorted({float(r[1]) for r in rows})
    s_index = {v: i for i, v in enumerate(svals)}
    a_index = {v: i for i, v in enumerate(avals)}
    grid = np.full((len(avals), len(svals)), np.nan)
    for r in rows:
        if len(r) != 4:
            raise SchemaError(f"{csv_path}: malformed row {r!r}")
        s, a, flag, rstar = float(r[0]), float(r[1]), r[2], r[3]
        if flag not in ("0", "1"):
            raise SchemaError(f"{csv_path}: in_region must be 0 or 1")
        if flag == "1":
            grid[a_index[a], s_index[s]] = float(rstar)

    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    if np.any(np.isfinite(grid)):
        mesh = ax.pcolormesh(svals, avals, np.ma.masked_invalid(grid),
                             shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label="certified sphere radius")
    if d is None:
        d = _infer_dimension(svals, avals, grid)
    if d is not None:
        ss = np.linspace(min(svals), min(max(svals), d - 3.0 - 1e-9), 400)
        b1 = [threshold_branches(d, float(x))[0] for x in ss]
        b2 = [threshold_branches(d, float(x))[1] for x in ss]
        ax.plot(ss, b1, "w--", lw=1.2, label="boundary-condition bound")
        ax.plot(ss, b2, "w:", lw=1.6, label="curvature bound")
        ax.legend(loc="upper left", fontsize=8)
    ax.set_xlabel("kernel exponent s")
    ax.set_ylabel("field exponent alpha")
    ax.set_title("region where the equilibrium support is a sphere")
    fig.tight_layout()
    fig.savefig(out_image_path, dpi=150)
    plt.close(fig)


def _infer_dimension(svals, avals, grid) -> int | None:
    """Recover d by matching the empirical region boundary to the closed-form
    threshold over candidate dimensions."""
    finite_cols = [j for j in range(len(svals)) if np.any(np.isfinite(grid[:, j]))]
    if not finite_cols:
        return None
    best = None
    best_err = math.inf
    for d in range(2, 26):
        err = 0.0
        used = 0
        for j in finite_cols:
            s = svals[j]
            if not -2.0 < s < d - 3.0:
                err += 100.0
                continue
            thr = max(threshold_branches(d, float(s)))
            col = grid[:, j]
            empirical = avals[int(np.nonzero(np.isfinite(col))[0][0])]
            err += abs(empirical - thr)
            used += 1
        if used and err < best_err:
            best, best_err = d, err
    return best


def render_profile(csv_path: str, out_image_path: str,
                   residual_csv: str | None = None) -> None:
    """Line plot of the modified potential with the sphere marked; optional
    second panel of the stationarity residual."""
    rows = _read_csv(csv_path, PROFILE_HEADER)
    lam = np.array([float(r[0]) for r in rows])
    f = np.array([float(r[1]) for r in rows])
    panels = 2 if residual_csv else 1
    fig, axes = plt.subplots(1, panels, figsize=(6.0 * panels, 4.2))
    axes = np.atleast_1d(axes)
    ax = axes[-1]
    finite = np.isfinite(f)
    ax.plot(lam[finite], f[finite], lw=1.4)
    ax.axvline(1.0, color="crimson", ls="--", lw=1.0, label="sphere (lambda = 1)")
    if np.any((lam > 0) & finite):
        span = lam[finite & (lam > 0)]
        if span.max() / max(span.min(), 1e-12) > 50:
            ax.set_xscale("log")
    ax.set_xlabel("lambda = |x|^2 / R^2")
    ax.set_ylabel("modified potential")
    ax.legend(fontsize=8)
    if residual_csv:
        rrows = _read_csv(residual_csv, RESIDUAL_HEADER)
        rr = np.array([float(r[0]) for r in rrows])
        res = np.array([float(r[1]) for r in rrows])
        ax0 = axes[0]
        ax0.plot(rr, res, lw=1.4)
        ax0.axhline(0.0, color="gray", lw=0.8)
        ax0.set_xlabel("radius R")
        ax0.set_ylabel("stationarity residual")
        if rr.max() / max(rr.min(), 1e-12) > 50:
            ax0.set_xscale("log")
    fig.tight_layout()
    fig.savefig(out_image_path, dpi=150)
    plt.close(fig)
