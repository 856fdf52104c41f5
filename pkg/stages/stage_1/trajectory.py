"""
Single trajectories and ensembles of them.

A trajectory starts from its own seeded random product state and repeats
[Trotter step; measurement layer] until the last sample time. The half-chain
entropy is recorded at the first step boundary at or after each sample time.

Everything random is drawn from the trajectory's NoiseStream, so a record is a
pure function of (config, traj_index). Ensembles may run on a process pool;
records are always reduced in trajectory-index order.
"""
import math
from functools import lru_cache
from multiprocessing import Pool
from typing import Callable, Iterable

import numpy as np

from .model import classify, monitored_operators
from .monitoring import NoiseStream, measurement_layer
from .schema import EntropySample, RunConfig, ScalingPoint, TrajectoryRecord
from .state import half_chain_entropy, random_product_state, total_magnetization
from .trotter import TrotterPlan, build_plan, step

STATIONARITY_SIGMAS = 3.0


def sample_steps(sample_times: Iterable[float], dt: float) -> list[int]:
    """Step index of each sample time: the first boundary k·dt ≥ T."""
    # 1e-9 absorbs float error in T/dt for times on the grid
    return [max(0, math.ceil(t / dt - 1e-9)) for t in sample_times]


@lru_cache(maxsize=8)
def _cached_plan(model, dt: float) -> TrotterPlan:
    return build_plan(model, dt)


def trajectory_record(
    config: RunConfig,
    traj_index: int,
    plan: TrotterPlan | None = None,
) -> TrajectoryRecord:
    if traj_index < 0:
        raise ValueError(f"trajectory index must be ≥ 0 (got {traj_index})")
    plan = plan or _cached_plan(config.model, config.dt)
    operators = monitored_operators(config.model, config.monitor)
    layer = measurement_layer(config.scheme)
    noise = NoiseStream(config.master_seed, traj_index, config.monitor.gamma, config.dt)

    state = random_product_state(config.L, noise.init_rng(), config.init_mode)
    sz_start = total_magnetization(state)
    drift = 0.0

    targets = sample_steps(config.sample_times, config.dt)
    samples: list[EntropySample] = []
    next_sample = 0
    for k in range(targets[-1] + 1):
        if k > 0:
            step(state, plan)
            layer(state, operators, noise, k - 1)
            drift = max(drift, abs(total_magnetization(state) - sz_start))
        # several sample times may land on the same boundary
        while next_sample < len(targets) and targets[next_sample] == k:
            samples.append(EntropySample(config.sample_times[next_sample], half_chain_entropy(state)))
            next_sample += 1

    return TrajectoryRecord(traj_index=traj_index, samples=samples, sz_drift=drift)


def run_trajectory(config: RunConfig, traj_index: int) -> list[EntropySample]:
    return trajectory_record(config, traj_index).samples


def _worker(args: tuple[RunConfig, int]) -> TrajectoryRecord:
    config, traj_index = args
    return trajectory_record(config, traj_index)


def summarize(config: RunConfig, records: list[TrajectoryRecord]) -> ScalingPoint:
    """
    Reduce completed trajectories to one ScalingPoint.

    S_mean is the flat average over every (trajectory, time) sample. S_stderr
    is the standard error of the per-trajectory time averages; it is 0 for a
    single trajectory.
    """
    if not records:
        raise ValueError("no trajectories to summarize")
    records = sorted(records, key=lambda r: r.traj_index)
    n_times = len(config.sample_times)
    for r in records:
        if len(r.samples) != n_times:
            raise RuntimeError(
                f"trajectory {r.traj_index} has {len(r.samples)} samples, expected {n_times}"
            )

    table = np.array([[s.S for s in r.samples] for r in records])
    n = table.shape[0]
    per_traj = table.mean(axis=1)
    stderr = float(per_traj.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0

    stationary = None
    if n > 1 and n_times > 1:
        first, last = table[:, 0], table[:, -1]
        combined = math.hypot(first.std(ddof=1), last.std(ddof=1)) / math.sqrt(n)
        gap = abs(float(first.mean() - last.mean()))
        stationary = gap == 0.0 or gap < STATIONARITY_SIGMAS * combined

    max_drift = None
    if classify(config.model, config.monitor).u1_symmetric:
        max_drift = max(r.sz_drift for r in records)

    s_max = (config.L // 2) * math.log(2)
    return ScalingPoint(
        L=config.L,
        S_mean=min(max(float(table.mean()), 0.0), s_max),
        S_stderr=stderr,
        n_samples=int(table.size),
        stationary=stationary,
        max_sz_drift=max_drift,
    )


def run_ensemble(
    config: RunConfig,
    *,
    workers: int = 1,
    progress: Callable[[str], None] | None = None,
    completed: dict[int, TrajectoryRecord] | None = None,
    on_record: Callable[[TrajectoryRecord], None] | None = None,
) -> ScalingPoint:
    """
    Run trajectories 0..n_traj-1 and summarize them.

    `completed` holds records restored from a checkpoint; only the missing
    indices are simulated. `on_record` sees each new record in index order.
    """
    log = progress or (lambda _m: None)
    done = dict(completed or {})
    pending = [i for i in range(config.n_traj) if i not in done]
    log(f"[simulate] L={config.L}: {len(pending)} trajectory(ies) to run, "
        f"{config.n_traj - len(pending)} restored")

    report_every = max(1, len(pending) // 10)

    def _collect(results: Iterable[TrajectoryRecord]) -> None:
        for count, record in enumerate(results, start=1):
            done[record.traj_index] = record
            if on_record is not None:
                on_record(record)
            if count % report_every == 0 or count == len(pending):
                log(f"[simulate]   L={config.L}: {count}/{len(pending)} done")

    if pending:
        tasks = [(config, i) for i in pending]
        if workers > 1 and len(pending) > 1:
            with Pool(processes=min(workers, len(pending))) as pool:
                _collect(pool.imap(_worker, tasks))
        else:
            _collect(map(_worker, tasks))

    return summarize(config, [done[i] for i in range(config.n_traj)])
