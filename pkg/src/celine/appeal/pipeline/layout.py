# appeal/pipeline/layout.py
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class OutputLayout:
    """Stage directories under the configured output directory."""

    root: Path

    @property
    def sample_dir(self) -> Path:
        return self.root / "sample"

    @property
    def points_csv(self) -> Path:
        return self.sample_dir / "points.csv"

    @property
    def points_geojson(self) -> Path:
        return self.sample_dir / "points.geojson"

    @property
    def panoramas_dir(self) -> Path:
        return self.root / "panoramas"

    @property
    def luminosity_csv(self) -> Path:
        return self.panoramas_dir / "luminosity.csv"

    @property
    def ratings_dir(self) -> Path:
        return self.root / "ratings"

    @property
    def model_ratings_csv(self) -> Path:
        return self.ratings_dir / "model_ratings.csv"

    @property
    def audit_log(self) -> Path:
        return self.ratings_dir / "audit.jsonl"

    @property
    def panel_dir(self) -> Path:
        return self.root / "panel"

    @property
    def assignment_csv(self) -> Path:
        return self.panel_dir / "assignment.csv"

    @property
    def human_ratings_csv(self) -> Path:
        return self.panel_dir / "human_ratings.csv"

    @property
    def raters_csv(self) -> Path:
        return self.panel_dir / "raters.csv"

    @property
    def surfaces_dir(self) -> Path:
        return self.root / "surfaces"

    @property
    def analysis_dir(self) -> Path:
        return self.root / "analysis"

    @property
    def results_json(self) -> Path:
        return self.analysis_dir / "results.json"

    @property
    def report_dir(self) -> Path:
        return self.root / "report"

    @staticmethod
    def manifest(stage_dir: Path) -> Path:
        return stage_dir / "manifest.json"
