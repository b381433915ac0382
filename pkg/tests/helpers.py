# tests/helpers.py
"""Small fixtures shared across test packages."""
from __future__ import annotations

from typing import Dict, Iterable, Tuple

import numpy as np

from celine.appeal.imagery.panorama import PANORAMA_HEIGHT, PANORAMA_WIDTH, Panorama
from celine.appeal.sampling.geo import offset_m
from celine.appeal.scoring.models import ScoreSurface

# on the equator metre offsets are isotropic, so a grid spacing is also the rook distance
ORIGIN = (0.0, 0.0)
HELSINKI = (24.9384, 60.1699)


def grid_id(row: int, col: int) -> str:
    return f"g{row:02d}{col:02d}"


def grid_locations(rows: int, cols: int, spacing_m: float = 10.0) -> Dict[str, Tuple[float, float]]:
    return {
        grid_id(r, c): offset_m(ORIGIN[0], ORIGIN[1], c * spacing_m, r * spacing_m)
        for r in range(rows)
        for c in range(cols)
    }


def grid_surface(
    values: Iterable[Iterable[float]], spacing_m: float = 10.0, label: str = "grid"
) -> ScoreSurface:
    """Surface over a rows x cols grid from a nested list of values."""
    rows = [list(r) for r in values]
    locations = grid_locations(len(rows), len(rows[0]), spacing_m)
    return ScoreSurface(
        label=label,
        values={grid_id(r, c): float(v) for r, row in enumerate(rows) for c, v in enumerate(row)},
        locations=locations,
    )


def uniform_panorama(point_id: str, rgb) -> Panorama:
    image = np.empty((PANORAMA_HEIGHT, PANORAMA_WIDTH, 3), dtype=np.uint8)
    image[:, :] = rgb
    return Panorama(point_id=point_id, image=image)
