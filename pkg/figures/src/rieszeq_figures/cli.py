"""Command-line entry points for the figure scripts.

    rieszeq-figures scan INPUT.csv OUT.png [--d D]
    rieszeq-figures profile INPUT.csv OUT.png [--residual-csv RES.csv]

Exit codes: 0 on success, 2 on flag errors, 3 on schema mismatches.
"""

from __future__ import annotations

import argparse
import sys

from .render import SchemaError, render_profile, render_scan


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rieszeq-figures")
    sub = ap.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="region heatmap from a scan CSV")
    scan.add_argument("csv_path")
    scan.add_argument("out_image_path")
    scan.add_argument("--d", type=int, default=None,
                      help="dimension for the threshold-curve overlay")

    prof = sub.add_parser("profile", help="modified-potential profile plot")
    prof.add_argument("csv_path")
    prof.add_argument("out_image_path")
    prof.add_argument("--residual-csv", default=None,
                      help="optional (R, residual) CSV for a second panel")
    return ap


def run(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "scan":
            render_scan(args.csv_path, args.out_image_path, args.d)
        else:
            render_profile(args.csv_path, args.out_image_path, args.residual_csv)
    except (SchemaError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
