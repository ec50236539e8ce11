"""Command-line entry point: tournfig --csv rows.csv --metric avg_pct --panels 10,20 --out fig.png"""

from __future__ import annotations

import argparse
import sys

from .render import METRICS, FigureSpec, MissingData, SchemaMismatch, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tournfig", description="render experiment CSVs as king-percentage figures"
    )
    parser.add_argument("--csv", required=True, help="experiments CSV path")
    parser.add_argument("--metric", choices=METRICS, default="avg_pct")
    parser.add_argument(
        "--panels", required=True, help="comma list of tournament sizes, e.g. 10,20,40"
    )
    parser.add_argument("--out", required=True, help="output image (.png or .svg)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        panels = [int(tok) for tok in args.panels.split(",")]
    except ValueError:
        print(f"error: --panels must be integers, got {args.panels!r}", file=sys.stderr)
        return 2
    spec = FigureSpec(
        csv_path=args.csv, metric=args.metric, panels=panels, output_path=args.out
    )
    try:
        render(spec)
    except (MissingData, SchemaMismatch, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
