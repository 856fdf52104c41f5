"""
CLI entry point for Stage 3: figure data and SVG panels.

Usage:
    python -m stages.stage_3 --pair runs/xx_z/xx_z.csv runs/xx_z/xx_z.ftest.json
    python -m stages.stage_3 --pair a.csv a.ftest.json --pair b.csv b.ftest.json --no-svg
"""
import argparse
import sys
import textwrap
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from utils.ui import fail, print_success, print_warning
from .pipeline import build_report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="report",
        description="Stage 3: Write per-series panel data (linear and log L) and optional SVGs.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=textwrap.dedent("""
        Examples:
          python -m stages.stage_3 --pair runs/xx_z/xx_z.csv runs/xx_z/xx_z.ftest.json
          python -m stages.stage_3 --pair a.csv a.ftest.json --pair b.csv b.ftest.json --out figs
          python -m stages.stage_3 --pair a.csv a.ftest.json --no-svg
        """),
    )
    parser.add_argument("--pair", nargs=2, action="append", default=[], metavar=("SERIES", "REPORT"),
                        help="Series CSV and its .ftest.json (repeatable)")
    parser.add_argument("--out", default=None, help="Output folder (default: next to each series)")
    parser.add_argument("--svg", action=argparse.BooleanOptionalAction, default=True,
                        help="Render SVG panels (default on)")
    return parser


def main(argv: list[str] | None = None):
    args = build_parser().parse_args(argv)

    try:
        written = build_report(
            [(Path(s), Path(r)) for s, r in args.pair],
            out_dir=Path(args.out) if args.out else None,
            svg=args.svg,
            progress=print,
        )
    except (FileNotFoundError, ValueError, RuntimeError) as e:
        fail(e)

    if not written:
        print_warning("empty report list: no files written")
        return
    for path in written:
        print_success(str(path))
    print(f"\n✓ Stage 3 complete — {len(written)} file(s)")
