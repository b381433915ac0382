# appeal/pipeline/sample.py
from __future__ import annotations

import logging

from celine.appeal.core.config import Settings
from celine.appeal.pipeline.common import layout_for, require_path
from celine.appeal.pipeline.manifest import Manifest, hash_files, write_manifest
from celine.appeal.sampling.io import (
    load_landmarks,
    load_network,
    write_points_csv,
    write_points_geojson,
)
from celine.appeal.sampling.network import sample_along_network
from celine.appeal.sampling.selection import augment_near_landmarks, merge_sample_sets, random_subsample

logger = logging.getLogger(__name__)


def cmd_sample(settings: Settings) -> Manifest:
    """Interval sampling, random subsample, landmark augmentation and dedup."""
    cfg = settings.sampling
    layout = layout_for(settings)
    network_path = require_path(settings.paths.network, "paths.network")

    network = load_network(network_path)
    pool = sample_along_network(network, cfg.interval_m)
    sampled = random_subsample(pool, cfg.random_n, settings.seed)

    augmented = []
    landmarks_path = None
    if cfg.augment and settings.paths.landmarks is not None:
        landmarks_path = require_path(settings.paths.landmarks, "paths.landmarks")
        augmented = augment_near_landmarks(pool, load_landmarks(landmarks_path), cfg.landmark_radius_m)
    elif cfg.augment:
        logger.info("No landmarks configured; skipping augmentation")

    points = merge_sample_sets(sampled, augmented, cfg.dedup_epsilon_m)

    write_points_csv(points, layout.points_csv)
    write_points_geojson(points, layout.points_geojson)

    manifest = Manifest(
        stage="sample",
        seed=settings.seed,
        inputs=hash_files(network=network_path, landmarks=landmarks_path),
        outputs=hash_files(points=layout.points_csv),
        counts={
            "segments": len(network.segments),
            "interval_samples": len(pool),
            "random_sample": len(sampled),
            "landmark_augmented": len(augmented),
            "final": len(points),
        },
        config={"sampling": cfg.model_dump(mode="json")},
    )
    write_manifest(layout.sample_dir, manifest)
    logger.info(
        "Sampled %d points (%d interval, %d random, %d near landmarks)",
        len(points),
        len(pool),
        len(sampled),
        len(augmented),
    )
    return manifest
