# appeal/panel/models.py
from __future__ import annotations

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class RaterGroup(str, Enum):
    LOCAL_RESIDENT = "local_resident"
    NON_RESIDENT = "non_resident"

    @classmethod
    def parse(cls, value: str) -> "RaterGroup":
        v = value.strip().lower()
        aliases = {"lr": cls.LOCAL_RESIDENT, "nr": cls.NON_RESIDENT}
        if v in aliases:
            return aliases[v]
        return cls(v)


class RaterKind(str, Enum):
    HUMAN = "human"
    MODEL = "model"


class Rater(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str = Field(min_length=1)
    group: RaterGroup

    @field_validator("group", mode="before")
    @classmethod
    def _group_alias(cls, v):
        return RaterGroup.parse(v) if isinstance(v, str) else v


class RatingRecord(BaseModel):
    """One score from one rater for one image.

    Human scores are integers; model scores are criterion means and may be
    fractional. ``prompt`` is the prompt key for model raters.
    """

    model_config = ConfigDict(frozen=True)

    rater_id: str = Field(min_length=1)
    point_id: str = Field(min_length=1)
    score: float = Field(ge=1.0, le=7.0)
    rater_kind: RaterKind = RaterKind.HUMAN
    prompt: Optional[str] = None
    criteria: Optional[str] = None

    @model_validator(mode="after")
    def _kind_rules(self) -> "RatingRecord":
        if self.rater_kind is RaterKind.HUMAN and not float(self.score).is_integer():
            raise ValueError("human scores must be integers")
        if self.rater_kind is RaterKind.MODEL and not self.prompt:
            raise ValueError("model ratings need a prompt")
        return self

    @property
    def key(self) -> Tuple[str, str, str]:
        return (self.rater_id, self.point_id, self.prompt or "")


class Assignment(BaseModel):
    """Ordered image lists per rater."""

    lists: Dict[str, List[str]]

    def rater_ids(self) -> List[str]:
        return sorted(self.lists)

    def per_image_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for ids in self.lists.values():
            for pid in ids:
                counts[pid] = counts.get(pid, 0) + 1
        return counts


class PanelSummary(BaseModel):
    total: int = 0
    per_rater: Dict[str, int] = Field(default_factory=dict)
    per_image: Dict[str, int] = Field(default_factory=dict)
    per_group: Dict[str, int] = Field(default_factory=dict)
    min_per_image: int = 0
    mean_per_image: float = 0.0
    mean_per_rater: float = 0.0
