from celine.appeal.sampling.geo import EARTH_RADIUS_M, haversine_m
from celine.appeal.sampling.models import (
    Landmark,
    PointSource,
    SamplePoint,
    StreetNetwork,
    StreetSegment,
)
from celine.appeal.sampling.network import sample_along_network
from celine.appeal.sampling.selection import (
    augment_near_landmarks,
    dedup,
    merge_sample_sets,
    random_subsample,
)

__all__ = [
    "EARTH_RADIUS_M",
    "haversine_m",
    "Landmark",
    "PointSource",
    "SamplePoint",
    "StreetNetwork",
    "StreetSegment",
    "sample_along_network",
    "augment_near_landmarks",
    "dedup",
    "merge_sample_sets",
    "random_subsample",
]
