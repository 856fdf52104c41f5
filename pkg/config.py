"""
Shared configuration for the weak-monitoring scaling toolkit.
All paths, defaults, and thresholds in one place.
"""
import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()


def _floats(raw: str) -> tuple[float, ...]:
    return tuple(float(v) for v in raw.split(",") if v.strip())


def _ints(raw: str) -> tuple[int, ...]:
    return tuple(int(v) for v in raw.split(",") if v.strip())


# ─── Simulation defaults ───────────────────────────────────────────────────
# Units: energies in J_x, times in 1/J_x.
DEFAULT_DT = float(os.getenv("DEFAULT_DT", "0.05"))
DEFAULT_GAMMA = float(os.getenv("DEFAULT_GAMMA", "0.1"))
DEFAULT_N_TRAJ = int(os.getenv("DEFAULT_N_TRAJ", "100"))
DEFAULT_SIZES: tuple[int, ...] = _ints(os.getenv("DEFAULT_SIZES", "8,10,12,14,16"))
# Late-time grid T = (25 + k) / J_x, k = 1..5
DEFAULT_SAMPLE_TIMES: tuple[float, ...] = _floats(
    os.getenv("DEFAULT_SAMPLE_TIMES", "26,27,28,29,30")
)
DEFAULT_INIT_MODE = os.getenv("DEFAULT_INIT_MODE", "haar-site")
DEFAULT_SCHEME = os.getenv("DEFAULT_SCHEME", "exponentiated")
DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", "0"))

# ─── Resources ─────────────────────────────────────────────────────────────
# 2^24 complex doubles = 256 MiB per state; raise on cluster nodes only.
MAX_L = int(os.getenv("MAX_L", "24"))
DEFAULT_WORKERS = int(os.getenv("DEFAULT_WORKERS", "1"))

# ─── Model presets ─────────────────────────────────────────────────────────
# Only the defining constraints of each preset are fixed; these fill in values.
PRESET_JY_ANISOTROPIC = float(os.getenv("PRESET_JY_ANISOTROPIC", "0.5"))
PRESET_JZ = float(os.getenv("PRESET_JZ", "0.5"))
PRESET_HZ = float(os.getenv("PRESET_HZ", "0.5"))

# ─── Analysis ──────────────────────────────────────────────────────────────
VERDICT_THRESHOLD = float(os.getenv("VERDICT_THRESHOLD", "0.5"))

# ─── Output storage ────────────────────────────────────────────────────────
RUNS_ROOT = Path(os.getenv("RUNS_ROOT", str(Path(__file__).parent / "runs")))


def get_run_path(run_name: str) -> Path:
    """Return the run folder path, creating it if needed."""
    p = RUNS_ROOT / run_name
    p.mkdir(parents=True, exist_ok=True)
    return p


def get_run_dirs(run_name: str, root: Path | None = None) -> dict:
    """Return the run folder and its checkpoint sub-folder, both created."""
    base = Path(root) if root is not None else get_run_path(run_name)
    base.mkdir(parents=True, exist_ok=True)
    checkpoints = base / "checkpoints"
    checkpoints.mkdir(parents=True, exist_ok=True)
    return {"root": base, "checkpoints": checkpoints}
