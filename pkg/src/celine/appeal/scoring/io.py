# appeal/scoring/io.py
from __future__ import annotations

from pathlib import Path

import pandas as pd

from celine.appeal.core.errors import DataValidationError
from celine.appeal.sampling.io import point_features, write_geojson
from celine.appeal.scoring.models import ScoreSurface

SURFACE_COLUMNS = ["point_id", "lon", "lat", "value"]


def surface_frame(surface: ScoreSurface) -> pd.DataFrame:
    ids = surface.point_ids
    coords = surface.coords(ids)
    return pd.DataFrame(
        {
            "point_id": ids,
            "lon": coords[:, 0],
            "lat": coords[:, 1],
            "value": surface.array(ids),
        },
        columns=SURFACE_COLUMNS,
    )


def write_surface_csv(surface: ScoreSurface, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    surface_frame(surface).to_csv(path, index=False, lineterminator="\n", float_format="%.10g")


def write_surface_geojson(surface: ScoreSurface, path: Path) -> None:
    rows = surface_frame(surface).to_dict(orient="records")
    collection = point_features(rows)
    collection["name"] = surface.label
    write_geojson(collection, path)


def read_surface_csv(path: Path, label: str | None = None) -> ScoreSurface:
    if not path.exists():
        raise FileNotFoundError(f"Surface file does not exist: {path}")
    df = pd.read_csv(path, dtype={"point_id": str})
    missing = set(SURFACE_COLUMNS) - set(df.columns)
    if missing:
        raise DataValidationError(f"{path}: missing columns {sorted(missing)}")
    return ScoreSurface(
        label=label or path.stem,
        values={r.point_id: float(r.value) for r in df.itertuples()},
        locations={r.point_id: (float(r.lon), float(r.lat)) for r in df.itertuples()},
    )
