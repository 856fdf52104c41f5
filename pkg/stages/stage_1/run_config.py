"""
Structured-text run configuration (.toml or .json).

    name = "xxz-z"                 # optional, defaults to the file stem
    model = "XXZ"                  # preset name or "custom"
    sizes = [8, 10, 12, 14]
    gamma = 0.1
    [monitor]
    kind = "single-site"           # or "bond"
    axis = "z"
    [couplings]                    # optional; overrides preset values
    J_z = 0.5

Everything except model, monitor and sizes falls back to config.py.
"""
import json
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from config import (
    DEFAULT_DT,
    DEFAULT_GAMMA,
    DEFAULT_INIT_MODE,
    DEFAULT_N_TRAJ,
    DEFAULT_SAMPLE_TIMES,
    DEFAULT_SCHEME,
    DEFAULT_SEED,
    DEFAULT_SIZES,
    DEFAULT_WORKERS,
)
from .model import PRESET_NAMES, SETUPS_BY_KEY, ModelSpec, MonitorSpec, preset
from .schema import RunConfig

REQUIRED_KEYS = ("model", "monitor", "sizes")
COUPLING_KEYS = ("J_x", "J_y", "J_z", "h_z")
KNOWN_KEYS = {
    "name", "model", "couplings", "monitor", "gamma", "dt", "sizes", "n_traj",
    "sample_times", "seed", "init_mode", "workers", "scheme",
}


@dataclass(frozen=True)
class RunSettings:
    name: str
    model: str
    monitor: MonitorSpec
    sizes: tuple[int, ...]
    couplings: dict[str, float] = field(default_factory=dict)
    dt: float = DEFAULT_DT
    n_traj: int = DEFAULT_N_TRAJ
    sample_times: tuple[float, ...] = DEFAULT_SAMPLE_TIMES
    seed: int = DEFAULT_SEED
    init_mode: str = DEFAULT_INIT_MODE
    scheme: str = DEFAULT_SCHEME
    workers: int = DEFAULT_WORKERS

    def model_at(self, L: int) -> ModelSpec:
        if self.model == "custom":
            values = {"J_x": 1.0, "J_y": 0.0, "J_z": 0.0, "h_z": 0.0, **self.couplings}
            return ModelSpec(L=L, name="custom", **values)
        overrides = {k: v for k, v in self.couplings.items() if k != "J_x"}
        return preset(self.model, L, **overrides)

    def run_config(self, L: int) -> RunConfig:
        return RunConfig(
            model=self.model_at(L),
            monitor=self.monitor,
            dt=self.dt,
            n_traj=self.n_traj,
            sample_times=self.sample_times,
            master_seed=self.seed,
            init_mode=self.init_mode,
            scheme=self.scheme,
        )

    def with_overrides(
        self,
        *,
        seed: int | None = None,
        workers: int | None = None,
        sizes: list[int] | None = None,
        n_traj: int | None = None,
    ) -> "RunSettings":
        changes: dict[str, Any] = {}
        if sizes is not None:
            changes["sizes"] = tuple(sizes)
        if n_traj is not None:
            if n_traj < 1:
                raise ValueError(f"n_traj must be ≥ 1 (got {n_traj})")
            changes["n_traj"] = n_traj
        if seed is not None:
            changes["seed"] = seed
        if workers is not None:
            if workers < 1:
                raise ValueError(f"workers must be ≥ 1 (got {workers})")
            changes["workers"] = workers
        return replace(self, **changes) if changes else self

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "model": self.model,
            "couplings": dict(self.couplings),
            "monitor": {"kind": self.monitor.kind, "axis": self.monitor.axis},
            "gamma": self.monitor.gamma,
            "dt": self.dt,
            "sizes": list(self.sizes),
            "n_traj": self.n_traj,
            "sample_times": list(self.sample_times),
            "seed": self.seed,
            "init_mode": self.init_mode,
            "scheme": self.scheme,
            "workers": self.workers,
        }


def _read(path: Path) -> dict:
    if not path.exists():
        raise FileNotFoundError(f"config file not found: {path}")
    if path.suffix == ".toml":
        try:
            return tomllib.loads(path.read_text())
        except tomllib.TOMLDecodeError as e:
            raise ValueError(f"{path.name}: invalid TOML ({e})") from e
    if path.suffix == ".json":
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise ValueError(f"{path.name}: invalid JSON ({e})") from e
        if not isinstance(data, dict):
            raise ValueError(f"{path.name}: top level must be an object")
        return data
    raise ValueError(f"config must be .toml or .json (got {path.suffix or 'no suffix'})")


def settings_from_dict(data: dict, default_name: str = "run") -> RunSettings:
    for key in REQUIRED_KEYS:
        if key not in data:
            raise ValueError(f"config is missing required key '{key}'")
    unknown = set(data) - KNOWN_KEYS
    if unknown:
        raise ValueError(f"unknown config key(s): {', '.join(sorted(unknown))}")

    model = str(data["model"])
    if model != "custom" and model not in PRESET_NAMES:
        raise ValueError(
            f"unknown model {model!r} (choose from {', '.join(PRESET_NAMES)} or 'custom')"
        )

    couplings = data.get("couplings", {})
    if not isinstance(couplings, dict):
        raise ValueError("'couplings' must be a table")
    bad = set(couplings) - set(COUPLING_KEYS)
    if bad:
        raise ValueError(f"unknown coupling(s): {', '.join(sorted(bad))}")
    couplings = {k: float(v) for k, v in couplings.items()}
    if model != "custom" and couplings.get("J_x", 1.0) != 1.0:
        raise ValueError("presets fix J_x = 1; use model = 'custom' for another energy scale")

    monitor = data["monitor"]
    if not isinstance(monitor, dict) or "kind" not in monitor or "axis" not in monitor:
        raise ValueError("'monitor' must be a table with 'kind' and 'axis'")
    monitor_spec = MonitorSpec(
        kind=str(monitor["kind"]),
        axis=str(monitor["axis"]),
        gamma=float(data.get("gamma", DEFAULT_GAMMA)),
    )

    sizes = data["sizes"]
    if not isinstance(sizes, list) or not all(isinstance(L, int) for L in sizes):
        raise ValueError("'sizes' must be a list of integers")

    if "sample_times" in data:
        sample_times = tuple(float(t) for t in data["sample_times"])
    else:
        # the default grid is in units of 1/J_x
        j_x = couplings.get("J_x", 1.0)
        scale = 1.0 / abs(j_x) if j_x else 1.0
        sample_times = tuple(t * scale for t in DEFAULT_SAMPLE_TIMES)

    settings = RunSettings(
        name=str(data.get("name", default_name)),
        model=model,
        monitor=monitor_spec,
        sizes=tuple(sizes),
        couplings=couplings,
        dt=float(data.get("dt", DEFAULT_DT)),
        n_traj=int(data.get("n_traj", DEFAULT_N_TRAJ)),
        sample_times=sample_times,
        seed=int(data.get("seed", DEFAULT_SEED)),
        init_mode=str(data.get("init_mode", DEFAULT_INIT_MODE)),
        scheme=str(data.get("scheme", DEFAULT_SCHEME)),
        workers=int(data.get("workers", DEFAULT_WORKERS)),
    )
    if settings.workers < 1:
        raise ValueError(f"workers must be ≥ 1 (got {settings.workers})")
    # surfaces model and run-parameter errors before any size is simulated
    settings.run_config(4)
    return settings


def load_run_config(path: Path | str) -> RunSettings:
    path = Path(path)
    return settings_from_dict(_read(path), default_name=path.stem)


def settings_for_setup(
    key: str,
    sizes=DEFAULT_SIZES,
    *,
    gamma: float = DEFAULT_GAMMA,
    n_traj: int = DEFAULT_N_TRAJ,
) -> RunSettings:
    """Run settings for a catalog setup ("XXZ+z"), preset couplings and default grid."""
    setup = SETUPS_BY_KEY.get(key)
    if setup is None:
        raise ValueError(f"unknown setup {key!r} (choose from {', '.join(SETUPS_BY_KEY)})")
    monitor = MonitorSpec.from_label(setup.monitor_label, gamma)
    return settings_from_dict(
        {
            "name": key.replace("+", "_"),
            "model": setup.model,
            "monitor": {"kind": monitor.kind, "axis": monitor.axis},
            "gamma": gamma,
            "sizes": list(sizes),
            "n_traj": n_traj,
        },
        default_name=key,
    )
