# appeal/pipeline/common.py
from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Optional, Tuple

from celine.appeal.core.config import Settings
from celine.appeal.core.errors import ConfigError, DataValidationError
from celine.appeal.pipeline.layout import OutputLayout
from celine.appeal.sampling.io import read_points_csv
from celine.appeal.sampling.models import SamplePoint


def layout_for(settings: Settings) -> OutputLayout:
    return OutputLayout(Path(settings.paths.output_dir))


def require_path(path: Optional[Path], name: str) -> Path:
    if path is None:
        raise ConfigError(f"{name} is not configured")
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"{name}: file not found: {path}")
    return path


def require_output(path: Path, produced_by: str) -> Path:
    if not path.exists():
        raise ConfigError(f"{path} does not exist; run `appeal-cli {produced_by}` first")
    return path


def load_points(layout: OutputLayout) -> List[SamplePoint]:
    points = read_points_csv(require_output(layout.points_csv, "sample"))
    if not points:
        raise DataValidationError(f"{layout.points_csv} contains no points")
    return points


def point_locations(points: List[SamplePoint]) -> Dict[str, Tuple[float, float]]:
    return {p.id: (p.lon, p.lat) for p in points}
