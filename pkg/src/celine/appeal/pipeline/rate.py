# appeal/pipeline/rate.py
from __future__ import annotations

import asyncio
import logging
from typing import List, Optional

from celine.appeal.backends.audit import AuditLog
from celine.appeal.backends.base import RatingBackend, get_backend
from celine.appeal.backends.batch import BatchResult, batch_rate
from celine.appeal.backends.models import RawModelRating
from celine.appeal.core.config import Settings
from celine.appeal.core.errors import BackendError, DataValidationError
from celine.appeal.imagery.sources import discover_panoramas
from celine.appeal.panel.ingest import ingest_ratings, write_ratings_csv
from celine.appeal.panel.models import RaterKind, RatingRecord
from celine.appeal.pipeline.common import layout_for, load_points
from celine.appeal.pipeline.manifest import Manifest, hash_files, write_manifest
from celine.appeal.prompts.models import all_prompt_models
from celine.appeal.prompts.parsing import serialize_vector

logger = logging.getLogger(__name__)

AUDIT_PARAMS = ("kind", "model", "temperature", "max_tokens", "image_detail", "seed")


def to_record(rating: RawModelRating) -> RatingRecord:
    """Model ratings share the panel CSV schema; the prompt key is the rater id."""
    return RatingRecord(
        rater_id=rating.prompt.key,
        point_id=rating.point_id,
        score=rating.aggregate,
        rater_kind=RaterKind.MODEL,
        prompt=rating.prompt.key,
        criteria=serialize_vector(rating.vector.scores),
    )


async def _run(
    settings: Settings, pans, skip, backend: RatingBackend, audit: AuditLog
) -> BatchResult:
    cfg = settings.backend
    try:
        return await batch_rate(
            pans,
            all_prompt_models(),
            backend,
            max_in_flight=cfg.max_in_flight,
            requests_per_minute=cfg.requests_per_minute,
            skip=skip,
            audit=audit,
            audit_params=cfg.model_dump(mode="json", include=set(AUDIT_PARAMS)),
        )
    finally:
        await backend.aclose()


def cmd_rate(settings: Settings, backend: Optional[RatingBackend] = None) -> Manifest:
    """Rate every panorama under all six prompt models, resuming earlier runs."""
    layout = layout_for(settings)
    points = load_points(layout)
    pans = discover_panoramas(layout.panoramas_dir, [p.id for p in points])
    if not pans:
        raise DataValidationError(f"no panoramas found in {layout.panoramas_dir}")

    existing: List[RatingRecord] = []
    if layout.model_ratings_csv.exists():
        existing = ingest_ratings(
            layout.model_ratings_csv, known_points={p.id for p in points}, strict=True
        ).records
    skip = {(r.point_id, r.prompt) for r in existing}

    backend = backend or get_backend(settings.backend)
    with AuditLog(layout.audit_log) as audit:
        result = asyncio.run(_run(settings, pans, skip, backend, audit))

    records = existing + [to_record(r) for r in result.ratings]
    write_ratings_csv(records, layout.model_ratings_csv)

    manifest = Manifest(
        stage="rate",
        seed=settings.seed,
        inputs=hash_files(points=layout.points_csv),
        outputs=hash_files(ratings=layout.model_ratings_csv),
        counts={
            "panoramas": len(pans),
            "ratings": len(records),
            "new": len(result.ratings),
            "resumed": result.skipped,
            "failed": len(result.failures),
        },
        config={"backend": settings.snapshot()["backend"]},
    )
    write_manifest(layout.ratings_dir, manifest)

    if result.failures:
        logger.warning("%d rating item(s) failed permanently", len(result.failures))
        if settings.strict:
            first = result.failures[0]
            raise BackendError(
                f"{len(result.failures)} rating item(s) failed, first {first.point_id} "
                f"{first.prompt.key}: {first.error}"
            )
    return manifest
