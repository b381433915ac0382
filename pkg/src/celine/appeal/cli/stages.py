# appeal/cli/stages.py
from __future__ import annotations

from pathlib import Path
from typing import Optional

import typer

from celine.appeal.cli.utils import (
    ConfigOption,
    SeedOption,
    StrictOption,
    VerboseOption,
    cli_errors,
    format_counts,
    load_cli_settings,
    setup_cli_logging,
)
from celine.appeal.pipeline.adjust import cmd_adjust
from celine.appeal.pipeline.analyze import cmd_analyze
from celine.appeal.pipeline.fetch import cmd_fetch
from celine.appeal.pipeline.rate import cmd_rate
from celine.appeal.pipeline.report import cmd_report
from celine.appeal.pipeline.sample import cmd_sample


def sample_cmd(
    config: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    verbose: bool = VerboseOption,
):
    """Sample image locations along the street network and around landmarks."""
    setup_cli_logging(verbose)
    with cli_errors():
        settings = load_cli_settings(config, seed)
        manifest = cmd_sample(settings)
    typer.echo(f"Sampled points: {format_counts(manifest.counts)}")


def fetch_cmd(
    config: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    strict: Optional[bool] = StrictOption,
    verbose: bool = VerboseOption,
):
    """Stitch panoramas for every sampled point and compute their luminosity."""
    setup_cli_logging(verbose)
    with cli_errors():
        settings = load_cli_settings(config, seed, strict)
        manifest = cmd_fetch(settings)
    typer.echo(f"Panoramas: {format_counts(manifest.counts)}")


def rate_cmd(
    config: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    strict: Optional[bool] = StrictOption,
    backend: Optional[str] = typer.Option(
        None, "--backend", help="Override backend.kind (mock or remote)"
    ),
    verbose: bool = VerboseOption,
):
    """Rate every panorama under the six prompt models, resuming earlier runs."""
    setup_cli_logging(verbose)
    with cli_errors():
        settings = load_cli_settings(config, seed, strict)
        if backend is not None:
            settings = settings.model_copy(
                update={"backend": settings.backend.model_copy(update={"kind": backend})}
            )
        manifest = cmd_rate(settings)
    typer.echo(f"Model ratings: {format_counts(manifest.counts)}")


def adjust_cmd(
    config: Optional[Path] = ConfigOption,
    verbose: bool = VerboseOption,
):
    """Mean-center ratings and write one score surface per group and prompt model."""
    setup_cli_logging(verbose)
    with cli_errors():
        settings = load_cli_settings(config)
        manifest = cmd_adjust(settings)
    typer.echo(f"Surfaces: {format_counts(manifest.counts['surfaces'])}")


def analyze_cmd(
    config: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    verbose: bool = VerboseOption,
):
    """Run the distribution tests and spatial statistics into results.json."""
    setup_cli_logging(verbose)
    with cli_errors():
        settings = load_cli_settings(config, seed)
        results = cmd_analyze(settings)
    typer.echo(
        f"Analysis: {len(results.comparisons)} comparisons, "
        f"{len(results.moran_ratings)} rating surfaces, "
        f"{len(results.differences)} difference surfaces"
    )


def report_cmd(
    config: Optional[Path] = ConfigOption,
    verbose: bool = VerboseOption,
):
    """Render CSV tables, GeoJSON layers and a summary from results.json."""
    setup_cli_logging(verbose)
    with cli_errors():
        settings = load_cli_settings(config)
        written = cmd_report(settings)
    typer.echo(f"Wrote {len(written)} report files")
