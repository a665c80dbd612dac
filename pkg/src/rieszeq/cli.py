"""Command-line front end.

Subcommands: constants, potential, check-sphere, scan, solve.  Machine output
goes to stdout unless --output-path is given, in which case files are written
atomically (temp file + rename).  Exit codes: 0 success, 2 flag error,
3 domain error, 4 solver did not converge.

CSV uses '.' decimals with 17 significant digits; JSON floats use Python's
shortest round-trip representation, with non-finite values encoded as the
strings "inf"/"-inf" and null.  Every JSON output carries schema_version and
validates against the schemas shipped in rieszeq/schemas/.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import equilibrium as eq
from . import fields as flds
from . import oracle as orc
from . import sphere as sph
from .specfun import DomainError

SCHEMA_VERSION = 1


def _fmt(x: float) -> str:
    return "%.17g" % x


def _jsonable(x):
    if isinstance(x, float):
        if math.isnan(x):
            return None
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, (np.floating,)):
        return _jsonable(float(x))
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    return x


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".rieszeq-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit_json(doc: dict, path: str | None) -> None:
    text = json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"
    _emit(text, path)


def _load_field(path: str) -> flds.RadialField:
    with open(path) as fh:
        spec = json.load(fh)
    return flds.field_from_dict(spec)


def _add_common(sub):
    sub.add_argument("--d", type=int, required=True)
    sub.add_argument("--s", type=float, required=True)
    sub.add_argument("--output-path", default=None)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rieszeq",
        description="Riesz sphere potentials and equilibrium-measure certificates")
    sp = ap.add_subparsers(dest="command", required=True)

    c = sp.add_parser("constants", help="c_sd, b_d and the power-law threshold")
    _add_common(c)

    pot = sp.add_parser("potential", help="profile of the modified potential")
    _add_common(pot)
    pot.add_argument("--R", type=float, required=True)
    pot.add_argument("--field", required=True)
    pot.add_argument("--lambda-min", type=float, required=True)
    pot.add_argument("--lambda-max", type=float, required=True)
    pot.add_argument("--n", type=int, required=True)
    pot.add_argument("--log", action="store_true")

    ch = sp.add_parser("check-sphere", help="certify whether a sphere is the equilibrium")
    _add_common(ch)
    ch.add_argument("--field", required=True)
    ch.add_argument("--r-min", type=float, default=1e-4)
    ch.add_argument("--r-max", type=float, default=1e4)

    sc = sp.add_parser("scan", help="power-law sphere region over (s, alpha)")
    sc.add_argument("--d", type=int, required=True)
    sc.add_argument("--s-min", type=float, required=True)
    sc.add_argument("--s-max", type=float, required=True)
    sc.add_argument("--s-n", type=int, required=True)
    sc.add_argument("--alpha-min", type=float, required=True)
    sc.add_argument("--alpha-max", type=float, required=True)
    sc.add_argument("--alpha-n", type=int, required=True)
    sc.add_argument("--gamma", type=float, required=True)
    sc.add_argument("--output-path", default=None)

    so = sp.add_parser("solve", help="numeric equilibrium oracles")
    _add_common(so)
    so.add_argument("--field", required=True)
    so.add_argument("--method", choices=("radial", "particles"), required=True)
    so.add_argument("--r-min", type=float, default=0.1)
    so.add_argument("--r-max", type=float, default=10.0)
    so.add_argument("--m", type=int, default=200)
    so.add_argument("--n", type=int, default=256)
    so.add_argument("--seed", type=int, default=0)
    so.add_argument("--max-iters", type=int, default=None)
    so.add_argument("--tol", type=float, default=1e-9)
    so.add_argument("--ref-radius", type=float, default=None)
    return ap


def _cmd_constants(args) -> int:
    p = sph.RieszParams(args.d, args.s)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "d": args.d,
        "s": args.s,
        "c_sd": sph.c_sd(p),
        "b_d": sph.b_d(args.d) if args.s == 0.0 else None,
        "alpha_threshold": (eq.alpha_threshold(p)
                            if -2.0 < args.s < args.d - 3.0 else None),
    }
    _emit_json(doc, args.output_path)
    return 0


def _cmd_potential(args) -> int:
    p = sph.RieszParams(args.d, args.s)
    f = _load_field(args.field)
    if args.n < 2 or args.lambda_min < 0 or args.lambda_max <= args.lambda_min:
        raise DomainError("need lambda_max > lambda_min >= 0 and n >= 2")
    ctx = eq.ModifiedPotentialCtx(p, f, args.R)
    if args.log:
        if args.lambda_min <= 0:
            raise DomainError("log spacing needs lambda_min > 0")
        lam = np.geomspace(args.lambda_min, args.lambda_max, args.n)
    else:
        lam = np.linspace(args.lambda_min, args.lambda_max, args.n)
    buf = io.StringIO()
    buf.write("lambda,f,f_prime,f_second\n")
    for x in lam:
        row = [float(x)]
        for order in (0, 1, 2):
            row.append(eq.f_eval(ctx, float(x), order))
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    _emit(buf.getvalue(), args.output_path)
    return 0


def _condition_doc(e: eq.ConditionEntry) -> dict:
    return {"lhs": e.lhs, "rhs": e.rhs, "pass": e.passed}


def _assessment_doc(a: eq.RadiusAssessment) -> dict:
    return {
        "R": a.R,
        "conditions": {
            "i": _condition_doc(a.report.cond_i),
            "ii": _condition_doc(a.report.cond_ii),
            "iii": _condition_doc(a.report.cond_iii),
            "iv": _condition_doc(a.report.cond_iv),
        },
        "note": a.report.note,
        "certificates": [
            {
                "name": ev.name,
                "side": ev.side,
                "holds": ev.holds,
                "heuristic": ev.heuristic,
                "note": ev.note,
                "inequalities": [
                    {"label": iq.label, "lhs": iq.lhs, "rhs": iq.rhs, "ok": iq.ok}
                    for iq in ev.inequalities
                ],
            }
            for ev in a.certificates
        ],
        "scan": (None if a.scan is None else {
            "argmin": a.scan.argmin,
            "min_value": a.scan.min_value,
            "min_at_one": a.scan.min_at_one,
            "margin": a.scan.margin,
        }),
        "certified": a.certified,
        "certificate_name": a.certificate_name,
    }


def _cmd_check_sphere(args) -> int:
    p = sph.RieszParams(args.d, args.s)
    f = _load_field(args.field)
    verdict = eq.certify_sphere(p, f, args.r_min, args.r_max)
    conf = flds.confinement_check(f, p)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "d": args.d,
        "s": args.s,
        "field": flds.field_to_dict(f),
        "radii": list(verdict.radii),
        "verdict": {
            "kind": verdict.kind,
            "R": None if math.isnan(verdict.R) else verdict.R,
            "certificate": verdict.certificate_name or None,
            "failed_condition": verdict.failed_condition or None,
        },
        "confinement": {
            "clause": conf.clause,
            "satisfied": conf.satisfied,
            "detail": conf.detail,
        },
        "assessments": [_assessment_doc(a) for a in verdict.assessments],
    }
    _emit_json(doc, args.output_path)
    return 0


def _scan_column(p_d: int, gamma: float, s: float, alphas: np.ndarray) -> list[str]:
    rows = []
    in_window = -2.0 < s < p_d - 3.0
    thr = math.inf
    c = math.nan
    if in_window:
        params = sph.RieszParams(p_d, s)
        thr = eq.alpha_threshold(params)
        c = sph.c_sd(params)
    for a in alphas:
        a = float(a)
        ok = in_window and a > max(-s, 0.0) and a >= thr
        if ok:
            rstar = (c / (2.0 * gamma)) ** (1.0 / (a + s))
            rows.append(f"{_fmt(s)},{_fmt(a)},1,{_fmt(rstar)}\n")
        else:
            rows.append(f"{_fmt(s)},{_fmt(a)},0,\n")
    return rows


def _cmd_scan(args) -> int:
    if args.s_n < 1 or args.alpha_n < 1:
        raise DomainError("grid sizes must be >= 1")
    if args.gamma <= 0:
        raise DomainError("gamma must be > 0")
    svals = np.linspace(args.s_min, args.s_max, args.s_n)
    avals = np.linspace(args.alpha_min, args.alpha_max, args.alpha_n)
    workers = os.environ.get("RIESZ_EQ_THREADS")
    max_workers = max(1, int(workers)) if workers else min(8, os.cpu_count() or 1)
    results: list[list[str]] = [None] * args.s_n  # type: ignore[list-item]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        futures = {pool.submit(_scan_column, args.d, args.gamma, float(s), avals): i
                   for i, s in enumerate(svals)}
        for fut, idx in futures.items():
            results[idx] = fut.result()
    buf = io.StringIO()
    buf.write("s,alpha,in_region,R_star\n")
    for rows in results:
        buf.writelines(rows)
    _emit(buf.getvalue(), args.output_path)
    return 0


def _cmd_solve(args) -> int:
    p = sph.RieszParams(args.d, args.s)
    f = _load_field(args.field)
    if args.method == "radial":
        max_iters = args.max_iters if args.max_iters is not None else 200_000
        meas = orc.radial_equilibrium_solve(p, f, args.r_min, args.r_max,
                                            args.m, max_iters, args.tol)
        rep = orc.support_report(meas, args.ref_radius)
        doc = {
            "schema_version": SCHEMA_VERSION,
            "method": "radial",
            "d": args.d,
            "s": args.s,
            "field": flds.field_to_dict(f),
            "seed": args.seed,
            "measure": {
                "radii": meas.radii,
                "weights": meas.weights,
            },
            "value": meas.value,
            "fw_gap": meas.fw_gap,
            "iterations": meas.iterations,
            "converged": meas.converged,
            "support": {
                "mean_radius": rep.mean_radius,
                "radius_std": rep.radius_std,
                "sphere_score": rep.sphere_score if args.ref_radius is not None else None,
            },
        }
        _emit_json(doc, args.output_path)
        return 0 if meas.converged else 4
    max_iters = args.max_iters if args.max_iters is not None else 2000
    cfg = orc.particle_equilibrium_solve(p, f, args.n, max_iters=max_iters,
                                         seed=args.seed)
    rep = orc.support_report(cfg, args.ref_radius)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "method": "particles",
        "d": args.d,
        "s": args.s,
        "field": flds.field_to_dict(f),
        "seed": args.seed,
        "measure": {
            "points": cfg.points,
        },
        "value": cfg.energy,
        "fw_gap": None,
        "iterations": cfg.iterations,
        "converged": cfg.converged,
        "support": {
            "mean_radius": rep.mean_radius,
            "radius_std": rep.radius_std,
            "sphere_score": rep.sphere_score if args.ref_radius is not None else None,
        },
    }
    _emit_json(doc, args.output_path)
    return 0 if cfg.converged else 4


_COMMANDS = {
    "constants": _cmd_constants,
    "potential": _cmd_potential,
    "check-sphere": _cmd_check_sphere,
    "scan": _cmd_scan,
    "solve": _cmd_solve,
}


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (DomainError, flds.OrderUnavailable, flds.LimitUndefined,
            FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except eq.WrongWindow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
