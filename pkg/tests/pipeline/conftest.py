# tests/pipeline/conftest.py
"""A synthetic city: eight parallel streets of 25 images each, local tiles and a four-person panel."""
from __future__ import annotations

import json
import shutil
from dataclasses import dataclass
from pathlib import Path
from typing import Dict

import numpy as np
import pytest
from PIL import Image

from celine.appeal.core.config import PathSettings, Settings
from celine.appeal.imagery.tiles import HEADINGS, TILE_SIZE
from celine.appeal.pipeline import (
    cmd_adjust,
    cmd_analyze,
    cmd_fetch,
    cmd_panel_assign,
    cmd_panel_ingest,
    cmd_rate,
    cmd_report,
    cmd_sample,
)
from celine.appeal.pipeline.common import layout_for, load_points
from celine.appeal.sampling.geo import offset_m
from tests.helpers import HELSINKI

STREET_LENGTH_M = 470.0
STREET_COUNT = 8
STREET_GAP_M = 60.0
RATERS = {"r01": "lr", "r02": "lr", "r03": "nr", "r04": "nr"}
GREEN = (20, 200, 20)
GREY = (128, 128, 128)


def write_network(path: Path) -> Path:
    features = []
    for i in range(STREET_COUNT):
        start = offset_m(*HELSINKI, 0.0, i * STREET_GAP_M)
        end = offset_m(*HELSINKI, STREET_LENGTH_M, i * STREET_GAP_M)
        features.append(
            {
                "type": "Feature",
                "id": f"street{i}",
                "properties": {},
                "geometry": {"type": "LineString", "coordinates": [list(start), list(end)]},
            }
        )
    path.write_text(json.dumps({"type": "FeatureCollection", "features": features}))
    return path


def greenness(lon: float) -> float:
    """0, 0.25, 0.5 or 0.75 rising from west to east."""
    west = HELSINKI[0]
    east = offset_m(*HELSINKI, STREET_LENGTH_M, 0.0)[0]
    return min(3, int(4 * (lon - west) / (east - west + 1e-12))) / 4.0


def _tile(level: float) -> Image.Image:
    arr = np.empty((TILE_SIZE, TILE_SIZE, 3), dtype=np.uint8)
    arr[:, :] = GREY
    arr[:, : int(level * TILE_SIZE)] = GREEN
    return Image.fromarray(arr)


def write_tiles(directory: Path, levels: Dict[str, float]) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    cache: Dict[float, Path] = {}
    for level in sorted(set(levels.values())):
        cache[level] = directory / f"_level_{int(level * 100)}.png"
        _tile(level).save(cache[level])
    for point_id, level in levels.items():
        for heading in HEADINGS:
            shutil.copyfile(cache[level], directory / f"{point_id}_{heading}.png")
    return directory


def write_panel(root: Path, levels: Dict[str, float]) -> tuple[Path, Path]:
    raters = root / "raters.csv"
    raters.write_text("rater_id,group\n" + "".join(f"{r},{g}\n" for r, g in RATERS.items()))

    rows = ["rater_id,point_id,score"]
    ids = sorted(levels)
    for j, rater in enumerate(RATERS):
        rng = np.random.default_rng(100 + j)
        # r03 skips the last few images so coverage is uneven
        for pid in ids[:-3] if rater == "r03" else ids:
            raw = 1.0 + 6.0 * levels[pid] + (j % 2) + rng.normal(0.0, 0.7)
            rows.append(f"{rater},{pid},{int(np.clip(round(raw), 1, 7))}")
    ratings = root / "human.csv"
    ratings.write_text("\n".join(rows) + "\n")
    return raters, ratings


def city_settings(root: Path, output_dir: Path) -> Settings:
    return Settings(
        seed=7,
        paths=PathSettings(
            network=root / "network.geojson",
            tiles=root / "tiles",
            raters=root / "raters.csv",
            ratings=root / "human.csv",
            output_dir=output_dir,
        ),
        sampling={"interval_m": 20.0, "random_n": 1000},
        panel={"coverage": 2, "per_rater_min": 0},
        stats={"k": 4, "permutations": 99},
        backend={"requests_per_minute": 1e7, "max_in_flight": 4},
    )


@dataclass
class CityRun:
    settings: Settings
    manifests: dict
    levels: Dict[str, float]

    @property
    def layout(self):
        return layout_for(self.settings)


def run_city(root: Path, output_dir: Path) -> CityRun:
    """Run every stage once; inputs under ``root`` are created on first use."""
    settings = city_settings(root, output_dir)
    if not (root / "network.geojson").exists():
        write_network(root / "network.geojson")
    manifests = {"sample": cmd_sample(settings)}

    levels = {p.id: greenness(p.lon) for p in load_points(layout_for(settings))}
    if not (root / "tiles").exists():
        write_tiles(root / "tiles", levels)
        write_panel(root, levels)

    manifests["fetch"] = cmd_fetch(settings)
    manifests["rate"] = cmd_rate(settings)
    manifests["panel-assign"] = cmd_panel_assign(settings)
    manifests["panel-ingest"] = cmd_panel_ingest(settings)
    manifests["adjust"] = cmd_adjust(settings)
    manifests["analyze"] = cmd_analyze(settings)
    manifests["report"] = cmd_report(settings)
    return CityRun(settings=settings, manifests=manifests, levels=levels)


@pytest.fixture(scope="module")
def city_root(tmp_path_factory) -> Path:
    return tmp_path_factory.mktemp("city")


@pytest.fixture(scope="module")
def city(city_root) -> CityRun:
    return run_city(city_root, city_root / "out1")
