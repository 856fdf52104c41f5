"""
Series CSV shared by simulate (writer), analyze and report (readers).

Schema version 1, header exactly:

    model,monitor,L,gamma,dt,n_traj,S_mean,S_stderr

Floats go through repr() so identical runs give identical bytes. One file may
hold several setups; rows are grouped back into series on read.
"""
import csv
from pathlib import Path

from stages.stage_1.schema import ScalingPoint, ScalingSeries

SERIES_SCHEMA_VERSION = 1
HEADER = ["model", "monitor", "L", "gamma", "dt", "n_traj", "S_mean", "S_stderr"]


def write_series(path: Path | str, series: list[ScalingSeries]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(HEADER)
        for s in series:
            for p in s.points:
                writer.writerow([
                    s.model, s.monitor, p.L, repr(float(s.gamma)), repr(float(s.dt)),
                    s.n_traj, repr(float(p.S_mean)), repr(float(p.S_stderr)),
                ])
    return path


def read_series(path: Path | str) -> list[ScalingSeries]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"series CSV not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != HEADER:
        raise ValueError(
            f"{path.name}: unsupported series header (expected schema v{SERIES_SCHEMA_VERSION}: "
            f"{','.join(HEADER)})"
        )

    groups: dict[tuple, list[ScalingPoint]] = {}
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(HEADER):
            raise ValueError(f"{path.name}:{line_no}: expected {len(HEADER)} fields, got {len(row)}")
        model, monitor, L, gamma, dt, n_traj, s_mean, s_err = row
        try:
            key = (model, monitor, float(gamma), float(dt), int(n_traj))
            # per-sample counts are not part of the CSV
            point = ScalingPoint(L=int(L), S_mean=float(s_mean), S_stderr=float(s_err), n_samples=0)
        except ValueError as e:
            raise ValueError(f"{path.name}:{line_no}: {e}") from e
        groups.setdefault(key, []).append(point)

    if not groups:
        raise ValueError(f"{path.name}: no data rows")
    return [
        ScalingSeries(model=m, monitor=mon, gamma=g, dt=dt, n_traj=n, points=pts)
        for (m, mon, g, dt, n), pts in groups.items()
    ]
