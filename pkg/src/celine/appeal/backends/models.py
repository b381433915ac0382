# appeal/backends/models.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from celine.appeal.prompts.models import CriterionVector, PromptModel


@dataclass(frozen=True)
class RawModelRating:
    point_id: str
    prompt: PromptModel
    vector: CriterionVector
    aggregate: float
    attempt_count: int
    raw_text: str

    @property
    def key(self) -> Tuple[str, str]:
        return (self.point_id, self.prompt.key)


@dataclass(frozen=True)
class RatingFailure:
    """Per-item error record; a failed item never aborts its batch."""

    point_id: str
    prompt: PromptModel
    error: str
    attempt_count: int
    raw_text: Optional[str] = None

    @property
    def key(self) -> Tuple[str, str]:
        return (self.point_id, self.prompt.key)
