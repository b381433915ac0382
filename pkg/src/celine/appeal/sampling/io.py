# appeal/sampling/io.py
"""GeoJSON / CSV readers and writers for street networks and point sets."""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Iterable, List, Sequence

import pandas as pd
from pydantic import ValidationError

from celine.appeal.core.errors import DataValidationError
from celine.appeal.sampling.models import Landmark, SamplePoint, StreetNetwork, StreetSegment

logger = logging.getLogger(__name__)

POINT_COLUMNS = ["id", "lon", "lat", "source", "captured"]


def _read_geojson(path: Path) -> dict[str, Any]:
    if not path.exists():
        raise FileNotFoundError(f"GeoJSON file does not exist: {path}")
    with path.open("r", encoding="utf-8") as f:
        data = json.load(f)
    if data.get("type") != "FeatureCollection":
        raise DataValidationError(f"{path} is not a GeoJSON FeatureCollection")
    return data


def _feature_id(feature: dict[str, Any], fallback: str) -> str:
    fid = feature.get("id")
    if fid is None:
        fid = (feature.get("properties") or {}).get("id")
    return str(fid) if fid is not None else fallback


def load_network(path: Path) -> StreetNetwork:
    data = _read_geojson(path)
    segments: List[StreetSegment] = []
    for idx, feature in enumerate(data.get("features") or []):
        geom = feature.get("geometry") or {}
        gtype = geom.get("type")
        base_id = _feature_id(feature, f"s{idx:05d}")
        if gtype == "LineString":
            parts = [geom["coordinates"]]
        elif gtype == "MultiLineString":
            parts = geom["coordinates"]
        else:
            logger.debug("Skipping feature %s with geometry %s", base_id, gtype)
            continue
        for part_idx, coords in enumerate(parts):
            seg_id = base_id if len(parts) == 1 else f"{base_id}.{part_idx}"
            try:
                segments.append(
                    StreetSegment(id=seg_id, vertices=[(float(c[0]), float(c[1])) for c in coords])
                )
            except ValidationError as exc:
                raise DataValidationError(f"invalid street segment {seg_id}: {exc}") from exc
    logger.info("Loaded %d street segments from %s", len(segments), path)
    return StreetNetwork(segments=segments)


def load_landmarks(path: Path) -> List[Landmark]:
    """Landmarks from GeoJSON Point features or a CSV with columns id,lon,lat."""
    if path.suffix.lower() == ".csv":
        if not path.exists():
            raise FileNotFoundError(f"Landmark file does not exist: {path}")
        df = pd.read_csv(path, dtype={"id": str})
        missing = {"id", "lon", "lat"} - set(df.columns)
        if missing:
            raise DataValidationError(f"{path} is missing columns {sorted(missing)}")
        rows = df[["id", "lon", "lat"]].to_dict(orient="records")
    else:
        data = _read_geojson(path)
        rows = []
        for idx, feature in enumerate(data.get("features") or []):
            geom = feature.get("geometry") or {}
            if geom.get("type") != "Point":
                continue
            lon, lat = geom["coordinates"][:2]
            rows.append({"id": _feature_id(feature, f"l{idx:05d}"), "lon": lon, "lat": lat})
    try:
        return [Landmark.model_validate(r) for r in rows]
    except ValidationError as exc:
        raise DataValidationError(f"invalid landmark in {path}: {exc}") from exc


def points_frame(points: Sequence[SamplePoint]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "id": p.id,
                "lon": p.lon,
                "lat": p.lat,
                "source": p.source.value,
                "captured": p.captured or "",
            }
            for p in points
        ],
        columns=POINT_COLUMNS,
    )


def write_points_csv(points: Sequence[SamplePoint], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    points_frame(points).to_csv(path, index=False, lineterminator="\n")


def read_points_csv(path: Path) -> List[SamplePoint]:
    if not path.exists():
        raise FileNotFoundError(f"Points file does not exist: {path}")
    df = pd.read_csv(path, dtype={"id": str, "captured": str}, keep_default_na=False)
    if df.empty:
        return []
    try:
        return [SamplePoint.model_validate(r) for r in df.to_dict(orient="records")]
    except ValidationError as exc:
        raise DataValidationError(f"invalid point in {path}: {exc}") from exc


def point_features(
    rows: Iterable[dict[str, Any]], lon_key: str = "lon", lat_key: str = "lat"
) -> dict[str, Any]:
    """FeatureCollection of points; remaining keys become properties."""
    features = []
    for row in rows:
        props = {k: v for k, v in row.items() if k not in (lon_key, lat_key)}
        features.append(
            {
                "type": "Feature",
                "properties": props,
                "geometry": {"type": "Point", "coordinates": [row[lon_key], row[lat_key]]},
            }
        )
    return {"type": "FeatureCollection", "features": features}


def write_geojson(collection: dict[str, Any], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as f:
        json.dump(collection, f, indent=1)
        f.write("\n")


def write_points_geojson(points: Sequence[SamplePoint], path: Path) -> None:
    write_geojson(
        point_features(points_frame(points).to_dict(orient="records")),
        path,
    )
