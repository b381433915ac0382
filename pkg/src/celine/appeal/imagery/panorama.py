# appeal/imagery/panorama.py
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Tuple, Union

import numpy as np
from PIL import Image
from pydantic import BaseModel, ConfigDict, Field

from celine.appeal.core.errors import ImageryError
from celine.appeal.imagery.tiles import HEADINGS, TILE_SIZE

# Rec. 709 luma coefficients for R, G, B
LUMINANCE_COEFFS = np.array([0.2126, 0.7152, 0.0722])

PANORAMA_WIDTH = len(HEADINGS) * TILE_SIZE
PANORAMA_HEIGHT = TILE_SIZE

Raster = Union[np.ndarray, Image.Image]


def to_rgb_array(raster: Raster) -> np.ndarray:
    """Decode to an 8-bit RGB array of shape (h, w, 3); alpha is discarded."""
    if isinstance(raster, Image.Image):
        return np.asarray(raster.convert("RGB"), dtype=np.uint8)
    arr = np.asarray(raster)
    if arr.ndim != 3 or arr.shape[2] not in (3, 4):
        raise ImageryError(f"expected an RGB raster, got shape {arr.shape}")
    return np.ascontiguousarray(arr[:, :, :3], dtype=np.uint8)


@dataclass(frozen=True)
class Panorama:
    point_id: str
    image: np.ndarray
    tile_order: Tuple[int, ...] = HEADINGS

    def __post_init__(self) -> None:
        if self.image.shape != (PANORAMA_HEIGHT, PANORAMA_WIDTH, 3):
            raise ImageryError(
                f"panorama {self.point_id} must be {PANORAMA_WIDTH}x{PANORAMA_HEIGHT} RGB, "
                f"got shape {self.image.shape}"
            )
        if self.image.dtype != np.uint8:
            raise ImageryError(f"panorama {self.point_id} must be 8-bit")

    def save(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        Image.fromarray(self.image).save(path, format="PNG")


@dataclass(frozen=True)
class PanoramaFile:
    """A panorama on disk, decoded only when rated."""

    point_id: str
    path: Path

    def load(self) -> Panorama:
        with Image.open(self.path) as img:
            return Panorama(point_id=self.point_id, image=to_rgb_array(img))


class LuminosityRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    point_id: str
    L: float = Field(ge=0.0, le=255.0)


def compose_panorama(
    tiles: Union[Mapping[int, Raster], Iterable[Tuple[int, Raster]]],
    point_id: str = "",
) -> Panorama:
    """Concatenate six 640x640 tiles left to right in ascending heading order."""
    pairs = tiles.items() if isinstance(tiles, Mapping) else tiles
    by_heading: dict[int, np.ndarray] = {}
    for heading, raster in pairs:
        heading = int(heading)
        if heading not in HEADINGS:
            raise ImageryError(f"unexpected heading {heading}")
        if heading in by_heading:
            raise ImageryError(f"duplicate heading {heading}")
        arr = to_rgb_array(raster)
        if arr.shape[:2] != (TILE_SIZE, TILE_SIZE):
            raise ImageryError(
                f"tile at heading {heading} is {arr.shape[1]}x{arr.shape[0]}, "
                f"expected {TILE_SIZE}x{TILE_SIZE}"
            )
        by_heading[heading] = arr

    missing = [h for h in HEADINGS if h not in by_heading]
    if missing:
        raise ImageryError(f"missing heading {', '.join(str(h) for h in missing)}")

    image = np.concatenate([by_heading[h] for h in HEADINGS], axis=1)
    return Panorama(point_id=point_id, image=image)


def pixel_luminosity(r, g, b):
    """L = 0.2126 R + 0.7152 G + 0.0722 B; works on scalars and arrays."""
    return LUMINANCE_COEFFS[0] * r + LUMINANCE_COEFFS[1] * g + LUMINANCE_COEFFS[2] * b


def mean_luminosity(pan: Panorama) -> LuminosityRecord:
    pixels = pan.image.reshape(-1, 3).astype(np.float64)
    value = float((pixels @ LUMINANCE_COEFFS).mean())
    return LuminosityRecord(point_id=pan.point_id, L=min(max(value, 0.0), 255.0))


def green_fraction(pan: Panorama) -> float:
    """Mean green chromaticity excess over pixels, in [0, 1].

    Per pixel: max(0, (3G - S) / (2S + 1)) with S = R + G + B, which is 0 for
    neutral greys and black and approaches 1 for pure green.
    """
    px = pan.image.reshape(-1, 3).astype(np.float64)
    s = px.sum(axis=1)
    excess = (3.0 * px[:, 1] - s) / (2.0 * s + 1.0)
    return float(np.clip(excess, 0.0, 1.0).mean())
