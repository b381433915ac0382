from celine.appeal.pipeline.adjust import SurfaceSet, build_surfaces, cmd_adjust
from celine.appeal.pipeline.analyze import AnalysisResults, cmd_analyze, load_results, run_analysis
from celine.appeal.pipeline.fetch import cmd_fetch
from celine.appeal.pipeline.layout import OutputLayout
from celine.appeal.pipeline.manifest import Manifest, read_manifest
from celine.appeal.pipeline.panel import cmd_panel_assign, cmd_panel_ingest, cmd_panel_summary
from celine.appeal.pipeline.rate import cmd_rate
from celine.appeal.pipeline.report import cmd_report, write_report
from celine.appeal.pipeline.sample import cmd_sample

__all__ = [
    "SurfaceSet",
    "build_surfaces",
    "cmd_adjust",
    "AnalysisResults",
    "cmd_analyze",
    "load_results",
    "run_analysis",
    "cmd_fetch",
    "OutputLayout",
    "Manifest",
    "read_manifest",
    "cmd_panel_assign",
    "cmd_panel_ingest",
    "cmd_panel_summary",
    "cmd_rate",
    "cmd_report",
    "write_report",
    "cmd_sample",
]
