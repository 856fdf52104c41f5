"""
Stage 3 orchestrator: turn (series CSV, F-test report) pairs into figure data.

Per series:   <stem>_linear.csv, <stem>_log.csv   (+ .svg of each)
Across pairs: pvalues.csv                          (+ pvalues.svg)

The P-value summary is only written when there is more than one series.
"""
import csv
import math
import re
from pathlib import Path
from typing import Callable

from stages.stage_1.model import PRESET_NAMES, MonitorSpec, classify, preset
from stages.stage_1.schema import ScalingSeries
from stages.stage_2.pipeline import load_reports
from stages.stage_2.schema import FTestReport
from utils.series_csv import read_series
from .plots import panel_rows, render_panel, render_pvalue_bars, write_panel_csv

PVALUE_COLUMNS = ["setup", "gamma", "interacting", "integrable", "u1", "F", "P", "verdict"]


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", text).strip("_")


def _identity(model: str, monitor: str, gamma: float, dt: float, sizes: list[int]) -> tuple:
    return model, monitor, gamma, dt, tuple(sizes)


def pair_up(series_list: list[ScalingSeries], reports: list[FTestReport]) -> list[tuple[ScalingSeries, FTestReport]]:
    """Match each report to its series; any report or series left over is an error."""
    by_identity = {
        _identity(s.model, s.monitor, s.gamma, s.dt, s.sizes): s for s in series_list
    }
    pairs = []
    for r in reports:
        s = by_identity.pop(_identity(r.model, r.monitor, r.gamma, r.dt, r.sizes), None)
        if s is None:
            raise ValueError(f"report {r.key} γ={r.gamma} L={r.sizes} has no matching series")
        pairs.append((s, r))
    if by_identity:
        left = ", ".join(f"{m}+{mon}" for m, mon, *_ in by_identity)
        raise ValueError(f"series without a report: {left}")
    return pairs


def _flags(report: FTestReport) -> tuple[str, str, str]:
    if report.model not in PRESET_NAMES:
        return "", "", ""
    L = max(4, min(report.sizes))
    flags = classify(preset(report.model, L), MonitorSpec.from_label(report.monitor, report.gamma))
    return str(flags.interacting), str(flags.integrable), str(flags.u1_symmetric)


def write_pvalue_summary(path: Path, reports: list[FTestReport]) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(PVALUE_COLUMNS)
        for r in reports:
            F = "inf" if math.isinf(r.F) else repr(r.F)
            writer.writerow([r.key, repr(r.gamma), *_flags(r), F, repr(r.P), r.verdict])
    return path


def build_report(
    pairs: list[tuple[Path, Path]],
    *,
    out_dir: Path | None = None,
    svg: bool = True,
    progress: Callable[[str], None] | None = None,
) -> list[Path]:
    """
    Write figure data for every (series CSV, report JSON) pair.
    Returns the written paths; an empty pair list writes nothing.
    """
    log = progress or (lambda _m: None)
    if not pairs:
        log("[report] ⚠ no series/report pairs given — nothing to do")
        return []

    written: list[Path] = []
    all_reports: list[FTestReport] = []
    for series_path, report_path in pairs:
        series_path, report_path = Path(series_path), Path(report_path)
        matched = pair_up(read_series(series_path), load_reports(report_path))
        target = Path(out_dir) if out_dir is not None else series_path.parent
        target.mkdir(parents=True, exist_ok=True)
        log(f"[report] {series_path.name} + {report_path.name}: {len(matched)} series")

        for series, report in matched:
            stem = series_path.stem if len(matched) == 1 else f"{series_path.stem}_{_slug(series.key)}"
            rows = panel_rows(series, report)
            for scale in ("linear", "log"):
                written.append(write_panel_csv(target / f"{stem}_{scale}.csv", rows))
                if svg:
                    written.append(render_panel(target / f"{stem}_{scale}.svg", rows, report, scale))
            log(f"[report]   ✓ {series.key}: panels → {stem}_{{linear,log}}")
            all_reports.append(report)

    if len(all_reports) > 1:
        summary_dir = Path(out_dir) if out_dir is not None else Path(pairs[0][0]).parent
        written.append(write_pvalue_summary(summary_dir / "pvalues.csv", all_reports))
        if svg:
            written.append(render_pvalue_bars(
                summary_dir / "pvalues.svg",
                [r.key for r in all_reports],
                [r.P for r in all_reports],
                all_reports[0].threshold,
            ))
        log(f"[report] ✓ P-value summary for {len(all_reports)} series → {summary_dir / 'pvalues.csv'}")
    return written
