from celine.appeal.prompts.models import (
    CRITERIA,
    CriterionVector,
    Persona,
    PromptModel,
    Tier,
    all_prompt_models,
    criteria_for,
)
from celine.appeal.prompts.parsing import aggregate, parse_response, serialize_vector
from celine.appeal.prompts.render import prompt_key, render_prompt

__all__ = [
    "CRITERIA",
    "CriterionVector",
    "Persona",
    "PromptModel",
    "Tier",
    "all_prompt_models",
    "criteria_for",
    "aggregate",
    "parse_response",
    "serialize_vector",
    "prompt_key",
    "render_prompt",
]
