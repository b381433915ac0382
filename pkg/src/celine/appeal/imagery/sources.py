# appeal/imagery/sources.py
from __future__ import annotations

import io
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Protocol, Sequence

import httpx
from PIL import Image

from celine.appeal.core.errors import ImageryError
from celine.appeal.imagery.panorama import (
    LuminosityRecord,
    PanoramaFile,
    compose_panorama,
    mean_luminosity,
    to_rgb_array,
)
from celine.appeal.imagery.tiles import TileSpec, tile_requests
from celine.appeal.sampling.models import SamplePoint

logger = logging.getLogger(__name__)

TILE_SUFFIXES = (".png", ".jpg", ".jpeg")


class TileSource(Protocol):
    """Fetches one directional tile as an RGB raster."""

    name: str

    def fetch(self, point: SamplePoint, spec: TileSpec) -> Image.Image: ...


class LocalTileSource:
    """Tiles stored as ``<point_id>_<heading>.png`` (or .jpg) in one directory."""

    name = "local"

    def __init__(self, directory: Path):
        self.directory = Path(directory)

    def fetch(self, point: SamplePoint, spec: TileSpec) -> Image.Image:
        for suffix in TILE_SUFFIXES:
            path = self.directory / spec.filename(suffix)
            if path.exists():
                with Image.open(path) as img:
                    return img.convert("RGB")
        raise ImageryError(f"tile {spec.filename('')} not found in {self.directory}")


class RemoteTileSource:
    """Street-level image API client (``location``, ``heading``, ``fov``, ``pitch``, ``size``)."""

    name = "remote"

    def __init__(self, endpoint: str, api_key_env: str, timeout_s: float = 30.0):
        key = os.environ.get(api_key_env)
        if not key:
            raise ImageryError(f"environment variable {api_key_env} is not set")
        self._endpoint = endpoint
        self._key = key
        self._client = httpx.Client(timeout=timeout_s)

    def fetch(self, point: SamplePoint, spec: TileSpec) -> Image.Image:
        params = {
            "location": f"{point.lat},{point.lon}",
            "heading": spec.heading,
            "fov": spec.fov,
            "pitch": spec.pitch,
            "size": spec.size,
            "key": self._key,
        }
        try:
            resp = self._client.get(self._endpoint, params=params)
            resp.raise_for_status()
        except httpx.HTTPError as exc:
            raise ImageryError(f"tile request failed for {spec.filename('')}: {exc}") from exc
        return Image.open(io.BytesIO(resp.content)).convert("RGB")

    def close(self) -> None:
        self._client.close()


@dataclass
class PanoramaBuildResult:
    panoramas: List[PanoramaFile] = field(default_factory=list)
    luminosity: List[LuminosityRecord] = field(default_factory=list)
    failures: dict[str, str] = field(default_factory=dict)


def _build_one(
    point: SamplePoint, source: TileSource, out_dir: Path
) -> tuple[PanoramaFile, LuminosityRecord]:
    tiles = {spec.heading: to_rgb_array(source.fetch(point, spec)) for spec in tile_requests(point)}
    pan = compose_panorama(tiles, point_id=point.id)
    path = out_dir / f"{point.id}.png"
    pan.save(path)
    return PanoramaFile(point_id=point.id, path=path), mean_luminosity(pan)


def build_panoramas(
    points: Sequence[SamplePoint],
    source: TileSource,
    out_dir: Path,
    *,
    max_workers: int = 4,
    strict: bool = True,
) -> PanoramaBuildResult:
    """Compose and write one panorama per point with a bounded worker pool.

    Results are ordered by point id regardless of completion order.
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    ordered = sorted(points, key=lambda p: p.id)
    result = PanoramaBuildResult()

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        futures = [(p, pool.submit(_build_one, p, source, out_dir)) for p in ordered]
        for point, fut in futures:
            try:
                pan_file, lum = fut.result()
            except ImageryError as exc:
                if strict:
                    raise
                logger.warning("Skipping panorama %s: %s", point.id, exc)
                result.failures[point.id] = str(exc)
                continue
            result.panoramas.append(pan_file)
            result.luminosity.append(lum)

    logger.info(
        "Built %d panoramas (%d failed) from %s tiles",
        len(result.panoramas),
        len(result.failures),
        source.name,
    )
    return result


def discover_panoramas(directory: Path, point_ids: Sequence[str]) -> List[PanoramaFile]:
    """Panorama files ``<point_id>.png`` present for the given points, ordered by id."""
    found = []
    for pid in sorted(point_ids):
        path = directory / f"{pid}.png"
        if path.exists():
            found.append(PanoramaFile(point_id=pid, path=path))
    return found
