# appeal/imagery/tiles.py
from __future__ import annotations

from typing import List, Literal

from pydantic import BaseModel, ConfigDict, field_validator

from celine.appeal.sampling.models import SamplePoint

# 0 points north; tiles are composed left to right in this order
HEADINGS: tuple[int, ...] = (0, 60, 120, 180, 240, 300)
FOV = 60
PITCH = 0
TILE_SIZE = 640


class TileSpec(BaseModel):
    """One directional street-level image request."""

    model_config = ConfigDict(frozen=True)

    point_id: str
    heading: int
    fov: Literal[60] = FOV
    pitch: Literal[0] = PITCH
    width: Literal[640] = TILE_SIZE
    height: Literal[640] = TILE_SIZE

    @field_validator("heading")
    @classmethod
    def _known_heading(cls, v: int) -> int:
        if v not in HEADINGS:
            raise ValueError(f"heading must be one of {HEADINGS}, got {v}")
        return v

    @property
    def size(self) -> str:
        return f"{self.width}x{self.height}"

    def filename(self, suffix: str = ".png") -> str:
        return f"{self.point_id}_{self.heading}{suffix}"


def tile_requests(p: SamplePoint) -> List[TileSpec]:
    return [TileSpec(point_id=p.id, heading=h) for h in HEADINGS]
