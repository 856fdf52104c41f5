"""
CLI entry point for Stage 2: scaling-law F-test.

Usage:
    python -m stages.stage_2 --series runs/xxz_z/xxz_z.csv
    python -m stages.stage_2 --series all.csv --weighted --threshold 0.6
"""
import argparse
import sys
import textwrap
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent.parent))
from config import VERDICT_THRESHOLD

from utils.ui import fail, format_stat, print_fit, print_header, print_info, print_verdict
from .pipeline import analyze_series
from .schema import FTestReport
from .statistics import VOLUME_LAW


def _display_report(report: FTestReport):
    print_header(f"{report.key}  γ={report.gamma}  L={report.sizes}")
    print_fit("Fit in L", report.fit_L.slope, report.fit_L.intercept, report.fit_L.sse, "L")
    print_fit("Fit in ln L", report.fit_lnL.slope, report.fit_lnL.intercept, report.fit_lnL.sse, "ln L")
    print_info("F", format_stat(report.F))
    print_info("dof", f"({report.dof[0]}, {report.dof[1]})")
    print_info("P", f"{report.P:.6f}  (threshold {report.threshold})")
    if report.weighted:
        print_info("Fits", "weighted by 1/S_stderr²")
    print_verdict(report.verdict, report.verdict == VOLUME_LAW)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="analyze",
        description="Stage 2: Compare linear-in-L and linear-in-ln L fits of S(L/2) with an F-test.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=textwrap.dedent("""
        Examples:
          python -m stages.stage_2 --series runs/xxz_z/xxz_z.csv
          python -m stages.stage_2 --series all.csv --weighted
        """),
    )
    parser.add_argument("--series", required=True, help="Series CSV written by simulate")
    parser.add_argument("--weighted", action="store_true", help="Weight fits by 1/S_stderr²")
    parser.add_argument("--threshold", type=float, default=VERDICT_THRESHOLD,
                        help=f"P at or above which the volume law is favored (default {VERDICT_THRESHOLD})")
    parser.add_argument("--out", default=None, help="Report path (default <series stem>.ftest.json)")
    return parser


def main(argv: list[str] | None = None):
    args = build_parser().parse_args(argv)

    try:
        reports, out = analyze_series(
            args.series,
            weighted=args.weighted,
            threshold=args.threshold,
            out_path=Path(args.out) if args.out else None,
        )
    except (FileNotFoundError, ValueError, RuntimeError) as e:
        fail(e)

    for report in reports:
        _display_report(report)
    volume = sum(1 for r in reports if r.verdict == VOLUME_LAW)
    print(f"\n✓ Stage 2 complete — {volume}/{len(reports)} series favor the volume law → {out}")
