# appeal/pipeline/fetch.py
from __future__ import annotations

import logging

from celine.appeal.core.config import Settings
from celine.appeal.imagery.io import write_luminosity_csv
from celine.appeal.imagery.sources import (
    LocalTileSource,
    RemoteTileSource,
    TileSource,
    build_panoramas,
)
from celine.appeal.pipeline.common import layout_for, load_points, require_path
from celine.appeal.pipeline.manifest import Manifest, hash_files, write_manifest

logger = logging.getLogger(__name__)


def tile_source(settings: Settings) -> TileSource:
    cfg = settings.imagery
    if cfg.source == "local":
        return LocalTileSource(require_path(settings.paths.tiles, "paths.tiles"))
    return RemoteTileSource(cfg.endpoint, cfg.api_key_env, cfg.timeout_s)


def cmd_fetch(settings: Settings, source: TileSource | None = None) -> Manifest:
    """Compose panoramas for every sampled point and record their luminosity."""
    layout = layout_for(settings)
    points = load_points(layout)
    source = source or tile_source(settings)

    try:
        result = build_panoramas(
            points,
            source,
            layout.panoramas_dir,
            max_workers=settings.imagery.max_workers,
            strict=settings.strict,
        )
    finally:
        close = getattr(source, "close", None)
        if close is not None:
            close()

    write_luminosity_csv(result.luminosity, layout.luminosity_csv)
    manifest = Manifest(
        stage="fetch",
        seed=settings.seed,
        inputs=hash_files(points=layout.points_csv),
        outputs=hash_files(luminosity=layout.luminosity_csv),
        counts={
            "points": len(points),
            "panoramas": len(result.panoramas),
            "failed": len(result.failures),
            "failures": dict(sorted(result.failures.items())),
        },
        config={"imagery": settings.imagery.model_dump(mode="json", exclude={"api_key_env"})},
    )
    write_manifest(layout.panoramas_dir, manifest)
    return manifest
