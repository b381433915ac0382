# appeal/cli/prompts.py
from __future__ import annotations

from typing import Optional

import typer

from celine.appeal.prompts.models import PromptModel, all_prompt_models
from celine.appeal.prompts.render import render_prompt

prompts_app = typer.Typer(name="prompts", help="Inspect the rating prompts")


@prompts_app.command("list")
def prompts_list():
    """List prompt keys with the number of criteria each expects."""
    for m in all_prompt_models():
        typer.echo(f"{m.key}\t{m.criteria_count}")


@prompts_app.command("show")
def prompts_show(
    key: Optional[str] = typer.Argument(None, help="Prompt key such as model2_lr; all if omitted"),
):
    """Print the exact prompt text sent to the backend."""
    if key is None:
        models = all_prompt_models()
    else:
        try:
            models = [PromptModel.from_key(key)]
        except ValueError as exc:
            typer.echo(str(exc), err=True)
            raise typer.Exit(code=1)

    for i, m in enumerate(models):
        if i:
            typer.echo("")
        typer.echo(f"# {m.key} ({m.criteria_count} criteria)")
        typer.echo(render_prompt(m).rstrip("\n"))
