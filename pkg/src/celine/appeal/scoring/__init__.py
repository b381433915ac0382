from celine.appeal.scoring.centering import (
    GROUP_SURFACE_LABELS,
    center_model,
    center_raters,
    difference_surface,
    per_group_mean,
    pooled_centered_scores,
    rater_means,
    surface_label,
)
from celine.appeal.scoring.io import read_surface_csv, write_surface_csv, write_surface_geojson
from celine.appeal.scoring.models import CenteredRating, DiffSurface, ScoreSurface

__all__ = [
    "GROUP_SURFACE_LABELS",
    "center_model",
    "center_raters",
    "difference_surface",
    "per_group_mean",
    "pooled_centered_scores",
    "rater_means",
    "surface_label",
    "read_surface_csv",
    "write_surface_csv",
    "write_surface_geojson",
    "CenteredRating",
    "DiffSurface",
    "ScoreSurface",
]
