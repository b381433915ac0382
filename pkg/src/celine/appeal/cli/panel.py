# appeal/cli/panel.py
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
from celine.appeal.pipeline.panel import cmd_panel_assign, cmd_panel_ingest, cmd_panel_summary

panel_app = typer.Typer(name="panel", help="Assign images to raters and ingest their ratings")


@panel_app.command("assign")
def panel_assign(
    config: Optional[Path] = ConfigOption,
    seed: Optional[int] = SeedOption,
    verbose: bool = VerboseOption,
):
    """Split the sampled images into per-rater batches."""
    setup_cli_logging(verbose)
    with cli_errors():
        manifest = cmd_panel_assign(load_cli_settings(config, seed))
    typer.echo(f"Assignment: {format_counts(manifest.counts)}")


@panel_app.command("ingest")
def panel_ingest(
    ratings: Optional[Path] = typer.Option(
        None, "--ratings", "-r", help="Human ratings CSV; defaults to paths.ratings"
    ),
    config: Optional[Path] = ConfigOption,
    strict: Optional[bool] = StrictOption,
    verbose: bool = VerboseOption,
):
    """Validate a human ratings file and store it with the panel outputs."""
    setup_cli_logging(verbose)
    with cli_errors():
        result = cmd_panel_ingest(load_cli_settings(config, strict=strict), ratings)
    for err in result.errors:
        typer.echo(f"Rejected: {err}", err=True)
    typer.echo(f"Accepted {len(result.records)} rating(s), rejected {len(result.errors)}")


@panel_app.command("summary")
def panel_summary_cmd(
    config: Optional[Path] = ConfigOption,
    verbose: bool = VerboseOption,
):
    """Print rating counts per rater, image and group."""
    setup_cli_logging(verbose)
    with cli_errors():
        summary = cmd_panel_summary(load_cli_settings(config))
    typer.echo(f"Total ratings: {summary.total}")
    typer.echo(f"Raters: {len(summary.per_rater)} (mean {summary.mean_per_rater:.1f} each)")
    typer.echo(
        f"Images: {len(summary.per_image)} (min {summary.min_per_image}, mean {summary.mean_per_image:.2f} ratings each)"
    )
    for group, n in sorted(summary.per_group.items()):
        typer.echo(f"  {group}: {n}")
