# appeal/backends/mock.py
from __future__ import annotations

import asyncio
import math
from typing import Optional

from celine.appeal.backends.base import Throttle
from celine.appeal.backends.config import BackendConfig
from celine.appeal.backends.models import RawModelRating
from celine.appeal.imagery.panorama import Panorama, green_fraction
from celine.appeal.prompts.models import SCORE_MAX, SCORE_MIN, CriterionVector, PromptModel
from celine.appeal.prompts.parsing import aggregate, serialize_vector


def mock_scores(g: float, m: PromptModel, seed: int) -> tuple[int, ...]:
    """Score of criterion k: clamp(round(1 + 6g + 0.3 sin(seed + k + offset)), 1, 7).

    ``k`` is the 0-based criterion index, ``offset`` is 0 for LR and 1 for NR,
    and rounding is half-up.
    """
    scores = []
    for k in range(m.criteria_count):
        raw = 1.0 + 6.0 * g + 0.3 * math.sin(seed + k + m.persona.offset)
        scores.append(min(SCORE_MAX, max(SCORE_MIN, math.floor(raw + 0.5))))
    return tuple(scores)


class MockBackend:
    """Deterministic, offline oracle: greener panoramas rate higher."""

    name = "mock"

    def __init__(self, config: BackendConfig):
        self.seed = config.seed

    async def rate(
        self, pan: Panorama, m: PromptModel, throttle: Optional[Throttle] = None
    ) -> RawModelRating:
        if throttle is not None:
            await throttle()
        g = await asyncio.to_thread(green_fraction, pan)
        vector = CriterionVector(mock_scores(g, m, self.seed))
        return RawModelRating(
            point_id=pan.point_id,
            prompt=m,
            vector=vector,
            aggregate=aggregate(vector),
            attempt_count=1,
            raw_text=serialize_vector(vector.scores),
        )

    async def aclose(self) -> None:
        return None
