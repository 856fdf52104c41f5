from pathlib import Path

import numpy as np
import pytest

from stages.stage_1.model import MonitorSpec, preset
from stages.stage_1.schema import RunConfig
from stages.stage_1.state import StateVector, random_product_state


def random_state(L: int, seed: int = 0) -> StateVector:
    """Generic (entangled) normalized state."""
    rng = np.random.default_rng(seed)
    amps = rng.standard_normal(2 ** L) + 1j * rng.standard_normal(2 ** L)
    return StateVector(L, amps).normalize()


def random_product(L: int, seed: int = 0) -> StateVector:
    return random_product_state(L, np.random.default_rng(seed), "haar-site")


def small_config(
    model: str = "XX",
    monitor: str = "z",
    *,
    L: int = 4,
    gamma: float = 0.1,
    dt: float = 0.05,
    n_traj: int = 3,
    sample_times=(0.5, 1.0),
    seed: int = 7,
    init_mode: str = "haar-site",
    scheme: str = "exponentiated",
) -> RunConfig:
    return RunConfig(
        model=preset(model, L),
        monitor=MonitorSpec.from_label(monitor, gamma),
        dt=dt,
        n_traj=n_traj,
        sample_times=tuple(sample_times),
        master_seed=seed,
        init_mode=init_mode,
        scheme=scheme,
    )


@pytest.fixture
def write_toml(tmp_path: Path):
    def _write(body: str, name: str = "run.toml") -> Path:
        path = tmp_path / name
        path.write_text(body, encoding="utf-8")
        return path
    return _write
