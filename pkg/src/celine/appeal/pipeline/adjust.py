# appeal/pipeline/adjust.py
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from celine.appeal.core.config import Settings
from celine.appeal.core.errors import DataValidationError
from celine.appeal.panel.ingest import ingest_ratings, load_raters
from celine.appeal.panel.models import Rater, RaterGroup, RatingRecord
from celine.appeal.pipeline.common import layout_for, load_points, point_locations, require_output
from celine.appeal.pipeline.layout import OutputLayout
from celine.appeal.pipeline.manifest import (
    Manifest,
    check_same_sample,
    hash_files,
    read_manifest,
    write_manifest,
)
from celine.appeal.prompts.models import all_prompt_models
from celine.appeal.scoring.centering import (
    center_model,
    center_raters,
    per_group_mean,
    rater_means,
)
from celine.appeal.scoring.io import write_surface_csv, write_surface_geojson
from celine.appeal.scoring.models import CenteredRating, ScoreSurface

logger = logging.getLogger(__name__)


@dataclass
class SurfaceSet:
    """Participant and model surfaces built from one consistent sample set."""

    participants: Dict[RaterGroup, ScoreSurface] = field(default_factory=dict)
    models: Dict[str, ScoreSurface] = field(default_factory=dict)
    centered_humans: List[CenteredRating] = field(default_factory=list)
    rater_means: Dict[str, float] = field(default_factory=dict)
    locations: Dict[str, Tuple[float, float]] = field(default_factory=dict)
    sample_hash: Optional[str] = None

    def all(self) -> Dict[str, ScoreSurface]:
        out = {s.label: s for s in self.participants.values()}
        out.update(self.models)
        return out


def _read_records(path, known: set, raters: Optional[List[Rater]], stage: str) -> List[RatingRecord]:
    records = ingest_ratings(require_output(path, stage), known, raters, strict=True).records
    if not records:
        raise DataValidationError(f"{path} contains no ratings")
    return records


def build_surfaces(settings: Settings, layout: Optional[OutputLayout] = None) -> SurfaceSet:
    layout = layout or layout_for(settings)
    points = load_points(layout)
    known = {p.id for p in points}
    locations = point_locations(points)

    sample_hash = check_same_sample(
        read_manifest(layout.sample_dir),
        read_manifest(layout.ratings_dir),
        read_manifest(layout.panel_dir),
    )

    raters = load_raters(require_output(layout.raters_csv, "panel ingest"))
    humans = _read_records(layout.human_ratings_csv, known, raters, "panel ingest")
    models = _read_records(layout.model_ratings_csv, known, None, "rate")

    centered_h = center_raters(humans, raters)
    centered_m = center_model(models)
    domain = sorted(known)

    out = SurfaceSet(
        centered_humans=centered_h,
        rater_means=rater_means(humans),
        locations=locations,
        sample_hash=sample_hash,
    )
    for group in RaterGroup:
        surface = per_group_mean(centered_h, group, locations, domain)
        if len(surface) == 0:
            logger.warning("No ratings from group %s; surface skipped", group.value)
            continue
        out.participants[group] = surface
    for m in all_prompt_models():
        surface = per_group_mean(centered_m, m.key, locations, domain)
        if len(surface) == 0:
            logger.warning("No ratings for prompt %s; surface skipped", m.key)
            continue
        out.models[m.key] = surface
    return out


def cmd_adjust(settings: Settings) -> Manifest:
    """Center both rating files and write one surface per group and prompt model."""
    layout = layout_for(settings)
    surfaces = build_surfaces(settings, layout)

    outputs = {}
    for label, surface in sorted(surfaces.all().items()):
        csv_path = layout.surfaces_dir / f"{label}.csv"
        write_surface_csv(surface, csv_path)
        write_surface_geojson(surface, layout.surfaces_dir / f"{label}.geojson")
        outputs.update(hash_files(surface=csv_path))

    means = surfaces.rater_means
    manifest = Manifest(
        stage="adjust",
        seed=settings.seed,
        inputs=hash_files(
            points=layout.points_csv,
            human=layout.human_ratings_csv,
            model=layout.model_ratings_csv,
        ),
        outputs=outputs,
        counts={
            "surfaces": {label: len(s) for label, s in sorted(surfaces.all().items())},
            "rater_mean_min": min(means.values()),
            "rater_mean_max": max(means.values()),
        },
    )
    write_manifest(layout.surfaces_dir, manifest)
    return manifest
