"""
Figure data and static SVG panels.

Each series yields two panels over the same rows
(L, S_mean, S_stderr, fit_L_value, fit_lnL_value): one with a linear L axis,
one with a logarithmic L axis. Both fitted lines are evaluated at the data's
L values.
"""
import csv
import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from stages.stage_1.schema import ScalingSeries
from stages.stage_2.schema import FTestReport

PANEL_COLUMNS = ["L", "S_mean", "S_stderr", "fit_L_value", "fit_lnL_value"]
PANEL_SCALES = ("linear", "log")

# fixed ids and no timestamp, so reruns write identical SVG bytes
plt.rcParams["svg.hashsalt"] = "weak-monitor-scaling"
_SVG_METADATA = {"Date": None}


@dataclass(frozen=True)
class PanelRow:
    L: int
    S_mean: float
    S_stderr: float
    fit_L_value: float
    fit_lnL_value: float


def panel_rows(series: ScalingSeries, report: FTestReport) -> list[PanelRow]:
    return [
        PanelRow(
            L=p.L,
            S_mean=p.S_mean,
            S_stderr=p.S_stderr,
            fit_L_value=report.fit_L(p.L),
            fit_lnL_value=report.fit_lnL(math.log(p.L)),
        )
        for p in series.points
    ]


def write_panel_csv(path: Path, rows: list[PanelRow]) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(PANEL_COLUMNS)
        for r in rows:
            writer.writerow([r.L, repr(r.S_mean), repr(r.S_stderr),
                             repr(r.fit_L_value), repr(r.fit_lnL_value)])
    return path


def render_panel(path: Path, rows: list[PanelRow], report: FTestReport, scale: str) -> Path:
    if scale not in PANEL_SCALES:
        raise ValueError(f"panel scale must be one of {PANEL_SCALES} (got {scale!r})")
    sizes = [r.L for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3.6))
    ax.errorbar(sizes, [r.S_mean for r in rows], yerr=[r.S_stderr for r in rows],
                fmt="o-", capsize=3, label="S(L/2)")
    ax.plot(sizes, [r.fit_L_value for r in rows], "--", label="fit in L")
    ax.plot(sizes, [r.fit_lnL_value for r in rows], ":", label="fit in ln L")
    if scale == "log":
        ax.set_xscale("log")
    ax.set_xlabel("L")
    ax.set_ylabel("S(L/2)")
    P = "n/a" if report.P is None else f"{report.P:.3f}"
    ax.set_title(f"{report.key}  γ={report.gamma}  P={P}")
    ax.legend(frameon=False, fontsize="small")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=_SVG_METADATA)
    plt.close(fig)
    return path


def render_pvalue_bars(path: Path, keys: list[str], pvalues: list[float], threshold: float) -> Path:
    fig, ax = plt.subplots(figsize=(max(4.0, 0.6 * len(keys) + 1.5), 3.6))
    ax.bar(range(len(keys)), pvalues, color="tab:blue")
    ax.axhline(threshold, color="grey", linestyle="--", linewidth=1)
    ax.set_xticks(range(len(keys)))
    ax.set_xticklabels(keys, rotation=45, ha="right")
    ax.set_ylim(0.0, 1.0)
    ax.set_ylabel("P")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=_SVG_METADATA)
    plt.close(fig)
    return path
