"""
Records produced by the simulation stage.

RunConfig is the full reproducibility key of one system size: its canonical
JSON hashes into the checkpoint file name, and the manifest echoes it.
"""
import hashlib
import json
import math
from dataclasses import dataclass, field, asdict
from typing import Any

from .model import ModelSpec, MonitorSpec
from .monitoring import SCHEMES
from .state import INIT_MODES


@dataclass(frozen=True)
class RunConfig:
    model: ModelSpec
    monitor: MonitorSpec
    dt: float = 0.05
    n_traj: int = 100
    sample_times: tuple[float, ...] = (26.0, 27.0, 28.0, 29.0, 30.0)
    master_seed: int = 0
    init_mode: str = "haar-site"
    scheme: str = "exponentiated"

    def __post_init__(self):
        object.__setattr__(self, "sample_times", tuple(float(t) for t in self.sample_times))
        if not self.dt > 0:
            raise ValueError(f"dt must be > 0 (got {self.dt})")
        if self.n_traj < 1:
            raise ValueError(f"n_traj must be ≥ 1 (got {self.n_traj})")
        if not self.sample_times:
            raise ValueError("sample_times must not be empty")
        if any(t < 0 for t in self.sample_times):
            raise ValueError("sample_times must be ≥ 0")
        if any(b <= a for a, b in zip(self.sample_times, self.sample_times[1:])):
            raise ValueError("sample_times must be strictly increasing")
        if self.init_mode not in INIT_MODES:
            raise ValueError(f"init_mode must be one of {INIT_MODES} (got {self.init_mode!r})")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES} (got {self.scheme!r})")

    @property
    def L(self) -> int:
        return self.model.L

    def to_dict(self) -> dict[str, Any]:
        return {
            "model": self.model.to_dict(),
            "monitor": self.monitor.to_dict(),
            "dt": self.dt,
            "n_traj": self.n_traj,
            "sample_times": list(self.sample_times),
            "master_seed": self.master_seed,
            "init_mode": self.init_mode,
            "scheme": self.scheme,
        }

    def digest(self) -> str:
        """SHA-256 of the canonical JSON, minus n_traj (more trajectories extend a checkpoint)."""
        payload = self.to_dict()
        payload.pop("n_traj")
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass(frozen=True)
class EntropySample:
    t: float
    S: float                       # nats


@dataclass
class TrajectoryRecord:
    traj_index: int
    samples: list[EntropySample] = field(default_factory=list)
    sz_drift: float = 0.0          # max |⟨S_z⟩(t) - ⟨S_z⟩(0)| over all steps

    def to_dict(self) -> dict[str, Any]:
        return {
            "traj_index": self.traj_index,
            "times": [s.t for s in self.samples],
            "entropies": [s.S for s in self.samples],
            "sz_drift": self.sz_drift,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TrajectoryRecord":
        times = data["times"]
        entropies = data["entropies"]
        if len(times) != len(entropies):
            raise ValueError("times and entropies differ in length")
        return cls(
            traj_index=int(data["traj_index"]),
            samples=[EntropySample(float(t), float(s)) for t, s in zip(times, entropies)],
            sz_drift=float(data.get("sz_drift", 0.0)),
        )


@dataclass
class ScalingPoint:
    L: int
    S_mean: float
    S_stderr: float
    n_samples: int
    stationary: bool | None = None     # None when fewer than two trajectories
    max_sz_drift: float | None = None  # only audited for U(1) setups

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class ScalingSeries:
    """S(L/2) against L for one (model, monitor, γ, dt) setup."""
    model: str
    monitor: str                   # CSV label: x, y, z, xx, yy, zz
    gamma: float
    dt: float
    n_traj: int
    points: list[ScalingPoint] = field(default_factory=list)

    def __post_init__(self):
        sizes = [p.L for p in self.points]
        if len(set(sizes)) != len(sizes):
            raise ValueError(f"series sizes must be distinct (got {sizes})")
        odd = [L for L in sizes if L % 2]
        if odd:
            raise ValueError(f"series sizes must be even (got {odd})")
        for p in self.points:
            if not (math.isfinite(p.S_mean) and math.isfinite(p.S_stderr)):
                raise ValueError(f"non-finite entropy at L={p.L}")
            if p.S_stderr < 0:
                raise ValueError(f"negative standard error at L={p.L}")

    @property
    def sizes(self) -> list[int]:
        return [p.L for p in self.points]

    @property
    def entropies(self) -> list[float]:
        return [p.S_mean for p in self.points]

    @property
    def stderrs(self) -> list[float]:
        return [p.S_stderr for p in self.points]

    @property
    def key(self) -> str:
        """Catalog-style name, e.g. 'XXZ+zz'."""
        return f"{self.model}+{self.monitor}"

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class RunManifest:
    name: str
    config: dict[str, Any]             # RunConfig echo (model.L = first size)
    sizes: list[int]
    code_version: str
    series_schema: int
    master_seed: int
    workers: int
    started_at: str = ""
    finished_at: str = ""
    checkpoint_digests: dict[str, str] = field(default_factory=dict)  # str(L) -> sha256
    stationarity: dict[str, bool | None] = field(default_factory=dict)
    u1_audit: dict[str, float | None] = field(default_factory=dict)
    series_path: str = ""

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)
