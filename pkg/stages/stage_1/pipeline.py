"""
Stage 1 orchestrator: simulate a size sweep for one (model, monitor) setup.

For each L in the sweep:
  config digest → checkpoint restore (--resume) → ensemble → ScalingPoint

then writes <name>.csv (the series) and manifest.json into the run folder.
Checkpoint appends happen in this process only; workers just return records.
"""
import json
from contextlib import nullcontext
from dataclasses import replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

from config import MAX_L, get_run_dirs
from stages import __version__
from utils.series_csv import SERIES_SCHEMA_VERSION, write_series
from .checkpoint import (
    CheckpointWriter,
    checkpoint_path,
    drop_partial_tail,
    load_records,
    records_digest,
)
from .model import classify
from .run_config import RunSettings
from .schema import RunConfig, RunManifest, ScalingSeries
from .trajectory import run_ensemble

U1_DRIFT_TOLERANCE = 1e-6


def check_sizes(sizes, max_L: int = MAX_L) -> list[int]:
    sizes = list(sizes)
    if not sizes:
        raise ValueError("sizes must not be empty")
    odd = [L for L in sizes if L % 2]
    if odd:
        raise ValueError(f"sizes must be even (got {odd})")
    if any(L < 2 for L in sizes):
        raise ValueError(f"sizes must be ≥ 2 (got {sizes})")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"sizes must be strictly increasing (got {sizes})")
    too_big = [L for L in sizes if L > max_L]
    if too_big:
        gib = 16 * 2 ** max(too_big) / 2 ** 30
        raise ValueError(
            f"L={max(too_big)} exceeds the memory cap max_L={max_L} "
            f"(one state needs {gib:.1f} GiB); raise --max-L or MAX_L to allow it"
        )
    return sizes


def sweep_sizes(
    base: RunConfig,
    sizes,
    *,
    workers: int = 1,
    checkpoint_dir: Path | None = None,
    resume: bool = False,
    max_L: int = MAX_L,
    progress: Callable[[str], None] | None = None,
) -> ScalingSeries:
    """
    One ScalingPoint per size, all other parameters taken from `base`.

    With a checkpoint folder every finished trajectory is appended to disk;
    `resume` continues from those records instead of discarding them.
    """
    log = progress or (lambda _m: None)
    sizes = check_sizes(sizes, max_L)
    if len(sizes) < 4:
        log(f"[simulate] ⚠ only {len(sizes)} size(s); the F-test needs at least 4")

    points = []
    for L in sizes:
        config = replace(base, model=base.model.with_size(L))
        path = checkpoint_path(checkpoint_dir, config) if checkpoint_dir is not None else None
        completed = {}
        if path is not None and path.exists():
            if resume:
                completed = load_records(path)
                cut = drop_partial_tail(path)
                if cut:
                    log(f"[simulate]   dropped {cut} bytes of an interrupted append in {path.name}")
            else:
                log(f"[simulate]   discarding stale checkpoint {path.name}")
                path.unlink()

        writer = CheckpointWriter(path) if path is not None else nullcontext()
        with writer as w:
            point = run_ensemble(
                config,
                workers=workers,
                progress=log,
                completed=completed,
                on_record=w.append if w is not None else None,
            )

        if point.stationary is False:
            log(f"[simulate] ⚠ L={L}: first and last sample times differ by more than "
                f"3 standard errors; the ensemble may not be stationary")
        if (point.max_sz_drift is not None and config.init_mode == "basis"
                and point.max_sz_drift > U1_DRIFT_TOLERANCE):
            log(f"[simulate] ⚠ L={L}: ⟨S_z⟩ drifted by {point.max_sz_drift:.2e} in a U(1) setup")
        log(f"[simulate] ✓ L={L}: S = {point.S_mean:.6f} ± {point.S_stderr:.6f}")
        points.append(point)

    return ScalingSeries(
        model=base.model.name,
        monitor=base.monitor.label,
        gamma=base.monitor.gamma,
        dt=base.dt,
        n_traj=base.n_traj,
        points=points,
    )


def simulate_run(
    settings: RunSettings,
    *,
    out_dir: Path | None = None,
    resume: bool = False,
    max_L: int = MAX_L,
    progress: Callable[[str], None] | None = None,
) -> dict[str, Path]:
    """
    Full simulate command. Returns the paths written: root, series, manifest,
    checkpoints.
    """
    log = progress or (lambda _m: None)
    sizes = check_sizes(settings.sizes, max_L)
    dirs = get_run_dirs(settings.name, root=out_dir)
    started = datetime.now(timezone.utc).isoformat()

    base = settings.run_config(sizes[0])
    flags = classify(base.model, base.monitor)
    log(f"[simulate] run={settings.name} setup={base.model.name}+{base.monitor.label} "
        f"γ={base.monitor.gamma} dt={base.dt} n_traj={base.n_traj} sizes={sizes} "
        f"workers={settings.workers}")
    log(f"[simulate] interacting={flags.interacting} integrable={flags.integrable} "
        f"u1={flags.u1_symmetric}")

    series = sweep_sizes(
        base,
        sizes,
        workers=settings.workers,
        checkpoint_dir=dirs["checkpoints"],
        resume=resume,
        max_L=max_L,
        progress=log,
    )
    series_path = write_series(dirs["root"] / f"{settings.name}.csv", [series])

    manifest = RunManifest(
        name=settings.name,
        config=settings.to_dict(),
        sizes=sizes,
        code_version=__version__,
        series_schema=SERIES_SCHEMA_VERSION,
        master_seed=settings.seed,
        workers=settings.workers,
        started_at=started,
        finished_at=datetime.now(timezone.utc).isoformat(),
        series_path=series_path.name,
    )
    for L, point in zip(sizes, series.points):
        config = settings.run_config(L)
        records = load_records(checkpoint_path(dirs["checkpoints"], config))
        records = {i: r for i, r in records.items() if i < config.n_traj}
        manifest.checkpoint_digests[str(L)] = records_digest(records)
        manifest.stationarity[str(L)] = point.stationary
        manifest.u1_audit[str(L)] = point.max_sz_drift

    manifest_path = dirs["root"] / "manifest.json"
    manifest_path.write_text(json.dumps(manifest.to_dict(), indent=2, ensure_ascii=False))
    log(f"[simulate] wrote {series_path} and {manifest_path.name}")
    return {
        "root": dirs["root"],
        "series": series_path,
        "manifest": manifest_path,
        "checkpoints": dirs["checkpoints"],
    }
