# appeal/sampling/models.py
from __future__ import annotations

import re
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from celine.appeal.sampling.geo import haversine_m

_YEAR_MONTH = re.compile(r"^\d{4}-(0[1-9]|1[0-2])$")


class PointSource(str, Enum):
    INTERVAL_SAMPLE = "interval_sample"
    LANDMARK_AUGMENT = "landmark_augment"


class SamplePoint(BaseModel):
    """A georeferenced candidate image location."""

    model_config = ConfigDict(frozen=True)

    id: str
    lon: float = Field(ge=-180.0, le=180.0)
    lat: float = Field(ge=-90.0, le=90.0)
    captured: Optional[str] = Field(
        default=None, description="Capture timestamp as YYYY-MM"
    )
    source: PointSource = PointSource.INTERVAL_SAMPLE

    @field_validator("captured")
    @classmethod
    def _year_month(cls, v: Optional[str]) -> Optional[str]:
        if v in (None, ""):
            return None
        if not _YEAR_MONTH.match(v):
            raise ValueError(f"captured must be YYYY-MM, got {v!r}")
        return v


class Landmark(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    lon: float = Field(ge=-180.0, le=180.0)
    lat: float = Field(ge=-90.0, le=90.0)


class StreetSegment(BaseModel):
    """One street polyline as ordered (lon, lat) vertices."""

    model_config = ConfigDict(frozen=True)

    id: str
    vertices: List[Tuple[float, float]]

    @model_validator(mode="after")
    def _check_polyline(self) -> "StreetSegment":
        if len(self.vertices) < 2:
            raise ValueError(f"segment {self.id} has fewer than 2 vertices")
        for lon, lat in self.vertices:
            if not (-180.0 <= lon <= 180.0 and -90.0 <= lat <= 90.0):
                raise ValueError(f"segment {self.id} has an invalid vertex ({lon}, {lat})")
        if self.length_m() <= 0.0:
            raise ValueError(f"segment {self.id} has zero length")
        return self

    def segment_lengths_m(self) -> List[float]:
        return [
            haversine_m(a[0], a[1], b[0], b[1])
            for a, b in zip(self.vertices[:-1], self.vertices[1:])
        ]

    def length_m(self) -> float:
        return float(sum(self.segment_lengths_m()))


class StreetNetwork(BaseModel):
    segments: List[StreetSegment] = Field(default_factory=list)

    @field_validator("segments")
    @classmethod
    def _unique_ids(cls, v: List[StreetSegment]) -> List[StreetSegment]:
        ids = [s.id for s in v]
        if len(ids) != len(set(ids)):
            raise ValueError("segment ids must be unique")
        return v
