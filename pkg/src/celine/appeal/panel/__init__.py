from celine.appeal.panel.assignment import (
    assign_batches,
    read_assignment_csv,
    write_assignment_csv,
)
from celine.appeal.panel.ingest import (
    IngestResult,
    ingest_ratings,
    load_raters,
    write_raters_csv,
    write_ratings_csv,
)
from celine.appeal.panel.models import (
    Assignment,
    PanelSummary,
    Rater,
    RaterGroup,
    RaterKind,
    RatingRecord,
)
from celine.appeal.panel.summary import panel_summary

__all__ = [
    "assign_batches",
    "read_assignment_csv",
    "write_assignment_csv",
    "IngestResult",
    "ingest_ratings",
    "load_raters",
    "write_raters_csv",
    "write_ratings_csv",
    "Assignment",
    "PanelSummary",
    "Rater",
    "RaterGroup",
    "RaterKind",
    "RatingRecord",
    "panel_summary",
]
