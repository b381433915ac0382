# appeal/sampling/selection.py
from __future__ import annotations

import logging
from typing import List, Sequence

import numpy as np
from scipy.spatial import cKDTree

from celine.appeal.sampling.geo import chord_for_distance, haversine_m, unit_vectors
from celine.appeal.sampling.models import Landmark, PointSource, SamplePoint

logger = logging.getLogger(__name__)

# k-d tree candidates are padded by this much; haversine decides
_SLACK_M = 1e-6


def random_subsample(points: Sequence[SamplePoint], n: int, seed: int) -> List[SamplePoint]:
    """Uniform sample without replacement, ordered by id.

    The input is sorted by id before drawing so the result depends only on
    the point set, ``n`` and ``seed``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    ordered = sorted(points, key=lambda p: p.id)
    if n >= len(ordered):
        return ordered
    rng = np.random.default_rng(seed)
    picked = rng.choice(len(ordered), size=n, replace=False)
    return [ordered[i] for i in sorted(picked.tolist())]


def augment_near_landmarks(
    pool: Sequence[SamplePoint], landmarks: Sequence[Landmark], radius: float
) -> List[SamplePoint]:
    """Pool points within ``radius`` metres (inclusive) of any landmark."""
    if radius <= 0:
        raise ValueError("radius must be > 0")
    if not landmarks or not pool:
        return []

    lm_lon = np.array([lm.lon for lm in landmarks])
    lm_lat = np.array([lm.lat for lm in landmarks])
    pool_lon = np.array([p.lon for p in pool])
    pool_lat = np.array([p.lat for p in pool])

    tree = cKDTree(unit_vectors(lm_lon, lm_lat))
    candidates = tree.query_ball_point(
        unit_vectors(pool_lon, pool_lat), r=chord_for_distance(radius + _SLACK_M)
    )
    hit = [
        bool(near)
        and bool((haversine_m(pool_lon[i], pool_lat[i], lm_lon[near], lm_lat[near]) <= radius).any())
        for i, near in enumerate(candidates)
    ]

    out = [
        p.model_copy(update={"source": PointSource.LANDMARK_AUGMENT})
        for p, keep in zip(pool, hit)
        if keep
    ]
    logger.info("%d of %d pool points within %.1f m of %d landmarks", len(out), len(pool), radius, len(landmarks))
    return out


def dedup(points: Sequence[SamplePoint], epsilon: float) -> List[SamplePoint]:
    """Greedy first-wins removal of points within ``epsilon`` metres of a kept point."""
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    if not points:
        return []

    lons = np.array([p.lon for p in points])
    lats = np.array([p.lat for p in points])
    tree = cKDTree(unit_vectors(lons, lats))
    # candidate search is padded; the haversine check below is authoritative
    candidates = tree.query_ball_point(
        unit_vectors(lons, lats), r=chord_for_distance(epsilon) * (1 + 1e-9) + 1e-15
    )

    kept_mask = np.zeros(len(points), dtype=bool)
    for i in range(len(points)):
        close = [
            j
            for j in candidates[i]
            if j != i and kept_mask[j] and haversine_m(lons[i], lats[i], lons[j], lats[j]) <= epsilon
        ]
        if not close:
            kept_mask[i] = True

    out = [p for p, keep in zip(points, kept_mask) if keep]
    if len(out) < len(points):
        logger.info("Dedup removed %d of %d points (epsilon %.2f m)", len(points) - len(out), len(points), epsilon)
    return out


def merge_sample_sets(
    random_points: Sequence[SamplePoint],
    augmented: Sequence[SamplePoint],
    epsilon: float,
) -> List[SamplePoint]:
    """Union of the random sample and landmark augmentation, then dedup.

    Random points come first so they win ties against augmentation copies.
    """
    return dedup([*random_points, *augmented], epsilon)
