# appeal/cli/utils.py
from __future__ import annotations

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Mapping, Optional

import typer
from pydantic import ValidationError

from celine.appeal.core.config import Settings, configure, get_settings, load_settings
from celine.appeal.core.errors import AppealError, ConfigError
from celine.appeal.core.logging import setup_logging

logger = logging.getLogger(__name__)

ConfigOption = typer.Option(
    None, "--config", "-c", help="YAML (or JSON) config file; defaults to ./appeal.yaml"
)
SeedOption = typer.Option(None, "--seed", help="Override the global seed")
StrictOption = typer.Option(
    None, "--strict/--lenient", help="Abort on the first bad row or failed item, or skip and log"
)
VerboseOption = typer.Option(False, "--verbose", "-v")


def setup_cli_logging(verbose: bool) -> None:
    setup_logging("DEBUG" if verbose else None)


def load_cli_settings(
    config: Optional[Path] = None,
    seed: Optional[int] = None,
    strict: Optional[bool] = None,
) -> Settings:
    """Resolve settings from the config file, then apply command-line overrides."""
    try:
        settings = load_settings(config) if config is not None else get_settings()
    except (FileNotFoundError, ValueError, ValidationError) as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc

    update = {}
    if seed is not None:
        update["seed"] = seed
    if strict is not None:
        update["strict"] = strict
    if update:
        settings = settings.model_copy(update=update)
    configure(settings)
    return settings


@contextmanager
def cli_errors() -> Iterator[None]:
    """Map pipeline errors to their exit codes."""
    try:
        yield
    except AppealError as exc:
        logger.debug("Command failed", exc_info=exc)
        typer.echo(f"Error: {exc}", err=True)
        raise typer.Exit(code=exc.exit_code)


def format_counts(counts: Mapping[str, Any]) -> str:
    return ", ".join(
        f"{k}={v}" for k, v in sorted(counts.items()) if not isinstance(v, (dict, list))
    )
