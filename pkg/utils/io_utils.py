"""
Trajectory CSV persistence and the run manifest.
"""
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union

import pandas as pd

from integrator import Trajectory
from .config_utils import ConfigError

# 17 significant digits round-trip every double exactly
FLOAT_FORMAT = "%.17g"
TRAJECTORY_FILE = "trajectory.csv"
MANIFEST_FILE = "manifest.json"


def events_path(path: Union[str, Path]) -> Path:
    """Sibling events file: ``run/trajectory.csv`` -> ``run/trajectory.events.csv``."""
    path = Path(path)
    return path.with_name(f"{path.stem}.events.csv")


def work_path(path: Union[str, Path]) -> Path:
    """Sibling work file: ``run/trajectory.csv`` -> ``run/trajectory.work.csv`` (t, W_cum)."""
    path = Path(path)
    return path.with_name(f"{path.stem}.work.csv")


def write_trajectory(traj: Trajectory, path: Union[str, Path]) -> Path:
    """Write samples, events and loading work as CSV; header-only files are valid."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        traj.to_frame().to_csv(path, index=False, float_format=FLOAT_FORMAT)
        traj.events_frame().to_csv(events_path(path), index=False, float_format=FLOAT_FORMAT)
        traj.work_frame().to_csv(work_path(path), index=False, float_format=FLOAT_FORMAT)
    except OSError as exc:
        raise OSError(f"cannot write trajectory to {path}: {exc.strerror or exc}") from exc
    return path


def _read_optional(path: Path) -> Optional[pd.DataFrame]:
    return pd.read_csv(path, float_precision="round_trip") if path.exists() else None


def read_trajectory(path: Union[str, Path]) -> Trajectory:
    """Read a trajectory written by ``write_trajectory``; events and work are optional."""
    path = Path(path)
    try:
        samples = pd.read_csv(path, float_precision="round_trip")
        events = _read_optional(events_path(path))
        work = _read_optional(work_path(path))
    except OSError as exc:
        raise OSError(f"cannot read trajectory {path}: {exc.strerror or exc}") from exc
    try:
        return Trajectory.from_frames(samples, events, work)
    except ValueError as exc:
        raise ConfigError(f"invalid trajectory {path}: {exc}") from exc


@dataclass
class RunManifest:
    """Everything needed to reproduce and re-audit one run directory."""
    config: Dict[str, Any]
    artifacts: Dict[str, str] = field(default_factory=dict)
    version: str = ""
    wall_clock_seconds: float = 0.0
    memory_delta_mb: float = 0.0
    ledger: Dict[str, Any] = field(default_factory=dict)
    created_at: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunManifest":
        return cls(**data)


def write_manifest(manifest: RunManifest, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(manifest.to_dict(), f, indent=2, ensure_ascii=False)
    except OSError as exc:
        raise OSError(f"cannot write manifest {path}: {exc.strerror or exc}") from exc
    return path


def read_manifest(path: Union[str, Path]) -> RunManifest:
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return RunManifest.from_dict(json.load(f))
    except OSError as exc:
        raise OSError(f"cannot read manifest {path}: {exc.strerror or exc}") from exc
