# appeal/prompts/render.py
from __future__ import annotations

from functools import lru_cache
from typing import Dict

from jinja2 import Environment, PackageLoader, StrictUndefined

from celine.appeal.prompts.models import Persona, PromptModel

PERSONA_CONTEXT: Dict[Persona, Dict[str, str]] = {
    Persona.LR: {
        "role": "a human resident of Helsinki",
        "perspective": "with a typical local perspective",
    },
    Persona.NR: {
        "role": "a human tourist in Helsinki",
        "perspective": "without a typical local perspective",
    },
}


@lru_cache(maxsize=1)
def _environment() -> Environment:
    return Environment(
        loader=PackageLoader("celine.appeal.prompts", "templates"),
        undefined=StrictUndefined,
        keep_trailing_newline=True,
        autoescape=False,
    )


def template_name(m: PromptModel) -> str:
    return f"{m.tier.value}.j2"


def render_prompt(m: PromptModel) -> str:
    """Render the prompt text for a tier/persona pair.

    Persona wording is the only substitution; the rest of each template
    is fixed text.
    """
    template = _environment().get_template(template_name(m))
    return template.render(**PERSONA_CONTEXT[m.persona])


def prompt_key(m: PromptModel) -> str:
    return m.key
