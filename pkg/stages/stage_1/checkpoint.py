"""
Per-size JSON-lines checkpoint keyed by the run-config digest.

Layout: runs/<name>/checkpoints/traj_L<LL>_<digest16>.jsonl

One line per completed trajectory. The digest prefix in the filename means any
change of a simulation parameter starts a fresh file; an unchanged config
resumes from the records already on disk.
"""
import hashlib
import json
from pathlib import Path

from .schema import RunConfig, TrajectoryRecord


def config_digest(config: RunConfig) -> str:
    """SHA-256 of the canonical config, truncated to 16 hex chars."""
    return config.digest()[:16]


def checkpoint_path(checkpoint_dir: Path, config: RunConfig) -> Path:
    checkpoint_dir.mkdir(parents=True, exist_ok=True)
    return checkpoint_dir / f"traj_L{config.L:02d}_{config_digest(config)}.jsonl"


def _encode(record: TrajectoryRecord) -> str:
    return json.dumps(record.to_dict(), sort_keys=True, separators=(",", ":"))


def load_records(path: Path) -> dict[int, TrajectoryRecord]:
    """
    Records by trajectory index. A final line without a newline is an
    interrupted append and is dropped; any other unreadable line is corruption.
    """
    if not path.exists():
        return {}
    text = path.read_text()
    lines = text.split("\n")
    if lines and lines[-1] and not text.endswith("\n"):
        lines = lines[:-1]
    records: dict[int, TrajectoryRecord] = {}
    for n, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = TrajectoryRecord.from_dict(json.loads(line))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise RuntimeError(f"corrupt checkpoint {path.name}, line {n}: {e}") from e
        records[record.traj_index] = record
    return records


def drop_partial_tail(path: Path) -> int:
    """Truncate an interrupted final append back to the last newline. Returns bytes cut."""
    if not path.exists():
        return 0
    data = path.read_bytes()
    if not data or data.endswith(b"\n"):
        return 0
    keep = data.rfind(b"\n") + 1
    with open(path, "r+b") as fh:
        fh.truncate(keep)
    return len(data) - keep


def records_digest(records: dict[int, TrajectoryRecord]) -> str:
    """SHA-256 over the records in index order; recorded in the manifest."""
    h = hashlib.sha256()
    for i in sorted(records):
        h.update(_encode(records[i]).encode())
        h.update(b"\n")
    return h.hexdigest()


class CheckpointWriter:
    """Single appender for one checkpoint file."""

    def __init__(self, path: Path):
        self.path = path
        self._fh = None

    def __enter__(self) -> "CheckpointWriter":
        drop_partial_tail(self.path)
        self._fh = open(self.path, "a", encoding="utf-8")
        return self

    def __exit__(self, *exc) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def append(self, record: TrajectoryRecord) -> None:
        if self._fh is None:
            raise RuntimeError("checkpoint writer is not open")
        self._fh.write(_encode(record) + "\n")
        self._fh.flush()
