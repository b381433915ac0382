# appeal/scoring/models.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from celine.appeal.core.errors import DataValidationError

Location = Tuple[float, float]


@dataclass(frozen=True)
class CenteredRating:
    rater_id: str
    point_id: str
    raw: float
    adjusted: float
    # participant group value, or the prompt key for model ratings
    group: str


@dataclass
class ScoreSurface:
    """Mean-centered score per image for one rater group or prompt model."""

    label: str
    values: Dict[str, float]
    locations: Dict[str, Location] = field(default_factory=dict)

    def __post_init__(self) -> None:
        missing = [pid for pid in self.values if pid not in self.locations]
        if missing:
            raise DataValidationError(
                f"surface {self.label}: {len(missing)} point(s) without location, e.g. {missing[0]}"
            )

    def __len__(self) -> int:
        return len(self.values)

    @property
    def point_ids(self) -> List[str]:
        return sorted(self.values)

    def array(self, point_ids: List[str] | None = None) -> np.ndarray:
        ids = point_ids if point_ids is not None else self.point_ids
        return np.array([self.values[pid] for pid in ids], dtype=float)

    def coords(self, point_ids: List[str] | None = None) -> np.ndarray:
        """(n, 2) array of lon, lat."""
        ids = point_ids if point_ids is not None else self.point_ids
        return np.array([self.locations[pid] for pid in ids], dtype=float).reshape(-1, 2)


@dataclass
class DiffSurface(ScoreSurface):
    """Pointwise model minus participant; positive where the model rates higher."""

    model_label: str = ""
    participant_label: str = ""
