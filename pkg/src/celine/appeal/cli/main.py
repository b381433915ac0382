# appeal/cli/main.py
from __future__ import annotations
import typer

from celine.appeal.cli.panel import panel_app
from celine.appeal.cli.prompts import prompts_app
from celine.appeal.cli.stages import (
    adjust_cmd,
    analyze_cmd,
    fetch_cmd,
    rate_cmd,
    report_cmd,
    sample_cmd,
)

app = typer.Typer(help="Street-view appeal rating pipeline", no_args_is_help=True)

app.command("sample")(sample_cmd)
app.command("fetch")(fetch_cmd)
app.command("rate")(rate_cmd)
app.add_typer(panel_app, name="panel")
app.command("adjust")(adjust_cmd)
app.command("analyze")(analyze_cmd)
app.command("report")(report_cmd)
app.add_typer(prompts_app, name="prompts")


def run():
    app()


if __name__ == "__main__":
    run()
