# appeal/sampling/network.py
from __future__ import annotations

import logging
import math
from typing import List

import numpy as np

from celine.appeal.core.errors import DataValidationError
from celine.appeal.sampling.geo import interpolate_great_circle
from celine.appeal.sampling.models import PointSource, SamplePoint, StreetNetwork, StreetSegment

logger = logging.getLogger(__name__)

# lengths within this many metres of a multiple of the interval count as exact
_ARC_EPS_M = 1e-6


def _arc_positions(length_m: float, interval_m: float) -> List[float]:
    full = math.floor((length_m + _ARC_EPS_M) / interval_m)
    positions = [k * interval_m for k in range(full + 1)]
    if length_m - positions[-1] > _ARC_EPS_M:
        positions.append(length_m)
    else:
        positions[-1] = length_m
    return positions


def _sample_segment(segment: StreetSegment, interval_m: float) -> List[SamplePoint]:
    lengths = np.asarray(segment.segment_lengths_m())
    cumulative = np.concatenate(([0.0], np.cumsum(lengths)))
    total = float(cumulative[-1])

    points: List[SamplePoint] = []
    for k, s in enumerate(_arc_positions(total, interval_m)):
        if k == 0:
            lon, lat = segment.vertices[0]
        elif s >= total:
            lon, lat = segment.vertices[-1]
        else:
            # last leg whose start is at or before s; zero-length legs are skipped over
            leg = int(np.searchsorted(cumulative, s, side="right")) - 1
            leg = min(leg, len(lengths) - 1)
            a, b = segment.vertices[leg], segment.vertices[leg + 1]
            frac = 0.0 if lengths[leg] == 0 else (s - cumulative[leg]) / lengths[leg]
            lon, lat = interpolate_great_circle(a[0], a[1], b[0], b[1], float(frac))
        points.append(
            SamplePoint(
                id=f"{segment.id}-{k:04d}",
                lon=lon,
                lat=lat,
                source=PointSource.INTERVAL_SAMPLE,
            )
        )
    return points


def sample_along_network(net: StreetNetwork, interval: float) -> List[SamplePoint]:
    """Place points every ``interval`` metres of arc length along each polyline.

    Both polyline endpoints are always included. Shared vertices between
    polylines yield coincident points; ``dedup`` removes them downstream.
    """
    if interval <= 0:
        raise ValueError("interval must be > 0")
    if not net.segments:
        raise DataValidationError("street network has no segments")

    out: List[SamplePoint] = []
    for segment in net.segments:
        out.extend(_sample_segment(segment, interval))

    logger.info(
        "Sampled %d points along %d segments at %.1f m", len(out), len(net.segments), interval
    )
    return out
