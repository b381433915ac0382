# appeal/pipeline/panel.py
from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Optional

from celine.appeal.core.config import Settings
from celine.appeal.panel.assignment import assign_batches, write_assignment_csv
from celine.appeal.panel.ingest import (
    IngestResult,
    ingest_ratings,
    load_raters,
    write_raters_csv,
    write_ratings_csv,
)
from celine.appeal.panel.models import PanelSummary, Rater
from celine.appeal.panel.summary import panel_summary
from celine.appeal.pipeline.common import layout_for, load_points, require_output, require_path
from celine.appeal.pipeline.manifest import Manifest, hash_files, write_manifest

logger = logging.getLogger(__name__)


def _raters(settings: Settings) -> List[Rater]:
    return load_raters(require_path(settings.paths.raters, "paths.raters"))


def cmd_panel_assign(settings: Settings) -> Manifest:
    """Deal sampled images out to the rater roster."""
    layout = layout_for(settings)
    points = load_points(layout)
    raters = _raters(settings)
    cfg = settings.panel

    assignment = assign_batches(
        [p.id for p in points], [r.id for r in raters], cfg.coverage, cfg.per_rater_min, settings.seed
    )
    write_assignment_csv(assignment, layout.assignment_csv)
    write_raters_csv(raters, layout.raters_csv)

    lengths = [len(v) for v in assignment.lists.values()]
    per_image = assignment.per_image_counts()
    manifest = Manifest(
        stage="panel-assign",
        seed=settings.seed,
        inputs=hash_files(points=layout.points_csv, raters=settings.paths.raters),
        outputs=hash_files(assignment=layout.assignment_csv),
        counts={
            "raters": len(raters),
            "images": len(points),
            "assignments": sum(lengths),
            "min_per_rater": min(lengths),
            "max_per_rater": max(lengths),
            "min_per_image": min(per_image.values()),
        },
        config={"panel": cfg.model_dump(mode="json")},
    )
    write_manifest(layout.panel_dir, manifest)
    return manifest


def cmd_panel_ingest(settings: Settings, ratings_path: Optional[Path] = None) -> IngestResult:
    """Validate collected human ratings and store them under the panel stage."""
    layout = layout_for(settings)
    points = load_points(layout)
    raters = _raters(settings)
    source = require_path(ratings_path or settings.paths.ratings, "paths.ratings")

    result = ingest_ratings(source, {p.id for p in points}, raters, strict=settings.strict)
    write_ratings_csv(result.records, layout.human_ratings_csv)
    write_raters_csv(raters, layout.raters_csv)

    summary = panel_summary(result.records, raters)
    manifest = Manifest(
        stage="panel-ingest",
        seed=settings.seed,
        inputs=hash_files(points=layout.points_csv, raters=settings.paths.raters, ratings=source),
        outputs=hash_files(ratings=layout.human_ratings_csv),
        counts={
            "accepted": len(result.records),
            "rejected": len(result.errors),
            "total": summary.total,
            "min_per_image": summary.min_per_image,
            "mean_per_image": summary.mean_per_image,
            "mean_per_rater": summary.mean_per_rater,
            "per_group": summary.per_group,
        },
    )
    write_manifest(layout.panel_dir, manifest)
    if result.errors:
        logger.warning("Rejected %d row(s) from %s", len(result.errors), source)
    return result


def cmd_panel_summary(settings: Settings) -> PanelSummary:
    layout = layout_for(settings)
    points = load_points(layout)
    raters = load_raters(layout.raters_csv) if layout.raters_csv.exists() else None
    records = ingest_ratings(
        require_output(layout.human_ratings_csv, "panel ingest"),
        {p.id for p in points},
        raters,
        strict=True,
    ).records
    return panel_summary(records, raters)
