"""
Stage 2 orchestrator: F-test every series in a series CSV.

Reads <stem>.csv written by Stage 1 (or assembled by hand from several runs),
runs the L vs. ln L comparison per series, and writes <stem>.ftest.json next
to it.
"""
import json
from pathlib import Path
from typing import Callable

from config import VERDICT_THRESHOLD
from utils.series_csv import read_series
from .schema import REPORT_SCHEMA_VERSION, FTestReport
from .statistics import f_test


def report_path_for(series_path: Path) -> Path:
    return series_path.with_name(f"{series_path.stem}.ftest.json")


def save_reports(path: Path, reports: list[FTestReport]) -> Path:
    payload = {"schema": REPORT_SCHEMA_VERSION, "reports": [r.to_dict() for r in reports]}
    path.write_text(json.dumps(payload, indent=2, ensure_ascii=False))
    return path


def load_reports(path: Path | str) -> list[FTestReport]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"F-test report not found: {path}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ValueError(f"{path.name}: invalid JSON ({e})") from e
    if data.get("schema") != REPORT_SCHEMA_VERSION:
        raise ValueError(f"{path.name}: unsupported report schema {data.get('schema')!r}")
    return [FTestReport.from_dict(r) for r in data.get("reports", [])]


def analyze_series(
    series_path: Path | str,
    *,
    weighted: bool = False,
    threshold: float = VERDICT_THRESHOLD,
    out_path: Path | None = None,
    progress: Callable[[str], None] | None = None,
) -> tuple[list[FTestReport], Path]:
    """
    F-test each series in the CSV. Returns the reports and the JSON path.
    """
    log = progress or (lambda _m: None)
    series_path = Path(series_path)
    all_series = read_series(series_path)
    log(f"[analyze] {series_path.name}: {len(all_series)} series")

    reports = []
    for series in all_series:
        report = f_test(series, weighted=weighted, threshold=threshold)
        log(f"[analyze]   {series.key} γ={series.gamma}: F={report.F:.4g} "
            f"dof={report.dof} P={report.P:.4f} → {report.verdict}")
        reports.append(report)

    out = save_reports(out_path or report_path_for(series_path), reports)
    log(f"[analyze] wrote {out}")
    return reports, out
