"""blowup-plots: render a laboratory report into a figure file."""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, FigureSpec, PlotError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blowup-plots",
        description="render blow-up laboratory CSV/JSON reports into figures",
    )
    parser.add_argument("report", help="path to a run's report.json")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--out", required=True, help="output file (.png or .svg)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(report_path=args.report, kind=args.kind, out_path=args.out)
        path = render(spec)
    except PlotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
