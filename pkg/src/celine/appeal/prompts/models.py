# appeal/prompts/models.py
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

SCORE_MIN = 1
SCORE_MAX = 7


class Tier(str, Enum):
    MODEL1 = "model1"
    MODEL2 = "model2"
    MODEL3 = "model3"

    @property
    def criteria_count(self) -> int:
        return len(CRITERIA[self])


class Persona(str, Enum):
    LR = "lr"
    NR = "nr"

    @property
    def offset(self) -> int:
        return 0 if self is Persona.LR else 1


PHYSICAL_FEATURES = (
    "Sidewalk Features for Pedestrian Activity",
    "Street Design for Traffic and Activity",
    "Tree Canopy and Greenery",
    "Physical Indicators of Human Activity",
    "Permanent Lighting",
)

URBAN_DESIGN_QUALITIES = (
    "Imageability",
    "Legibility",
    "Enclosure",
    "Human Scale",
    "Transparency",
    "Linkage",
    "Complexity",
    "Coherence",
)

# document order; response slots map to criteria in this order
CRITERIA: dict[Tier, Tuple[str, ...]] = {
    Tier.MODEL1: ("Overall visual appeal",),
    Tier.MODEL2: PHYSICAL_FEATURES,
    Tier.MODEL3: PHYSICAL_FEATURES + URBAN_DESIGN_QUALITIES + ("Subjective Reaction",),
}


@dataclass(frozen=True, order=True)
class PromptModel:
    tier: Tier
    persona: Persona

    @property
    def criteria_count(self) -> int:
        return self.tier.criteria_count

    @property
    def key(self) -> str:
        """Stable label such as ``model2_nr``."""
        return f"{self.tier.value}_{self.persona.value}"

    @classmethod
    def from_key(cls, key: str) -> "PromptModel":
        try:
            tier, persona = key.lower().split("_", 1)
            return cls(Tier(tier), Persona(persona))
        except ValueError as exc:
            raise ValueError(f"invalid prompt key {key!r}") from exc


@dataclass(frozen=True)
class CriterionVector:
    scores: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.scores:
            raise ValueError("criterion vector is empty")
        for s in self.scores:
            if not SCORE_MIN <= s <= SCORE_MAX:
                raise ValueError(f"score {s} outside [{SCORE_MIN}, {SCORE_MAX}]")

    def __len__(self) -> int:
        return len(self.scores)


def criteria_for(tier: Tier) -> Tuple[str, ...]:
    return CRITERIA[tier]


def all_prompt_models() -> List[PromptModel]:
    """The six prompt models in canonical (tier, persona) order."""
    return [PromptModel(t, p) for t in Tier for p in Persona]
