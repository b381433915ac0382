# appeal/scoring/centering.py
from __future__ import annotations

import logging
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from celine.appeal.core.errors import DataValidationError, StatisticsError, UnknownPointError
from celine.appeal.panel.models import Rater, RaterGroup, RaterKind, RatingRecord
from celine.appeal.scoring.models import CenteredRating, DiffSurface, Location, ScoreSurface

logger = logging.getLogger(__name__)

GROUP_SURFACE_LABELS = {
    RaterGroup.LOCAL_RESIDENT: "local_residents",
    RaterGroup.NON_RESIDENT: "non_residents",
}


def _frame(records: Sequence[RatingRecord], key: str) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "rater_id": [r.rater_id for r in records],
            "point_id": [r.point_id for r in records],
            "raw": np.array([r.score for r in records], dtype=float),
            "key": [getattr(r, key) or "" for r in records],
        }
    )


def _center(df: pd.DataFrame, by: str, groups: Sequence[str]) -> List[CenteredRating]:
    adjusted = df["raw"] - df.groupby(by, sort=False)["raw"].transform("mean")
    return [
        CenteredRating(rater_id=r, point_id=p, raw=float(x), adjusted=float(a), group=g)
        for r, p, x, a, g in zip(df["rater_id"], df["point_id"], df["raw"], adjusted, groups)
    ]


def rater_means(records: Sequence[RatingRecord]) -> Dict[str, float]:
    """Pre-adjustment mean raw score per rater."""
    if not records:
        return {}
    df = _frame(records, "rater_id")
    means = df.groupby("rater_id", sort=True)["raw"].mean()
    return {str(k): float(v) for k, v in means.items()}


def center_raters(
    records: Sequence[RatingRecord], raters: Optional[Sequence[Rater]] = None
) -> List[CenteredRating]:
    """Subtract each rater's own mean from their scores."""
    humans = [r for r in records if r.rater_kind is RaterKind.HUMAN]
    if len(humans) != len(records):
        raise DataValidationError("center_raters expects human ratings only")
    if not humans:
        return []

    groups_by_rater = {r.id: r.group.value for r in raters} if raters is not None else {}
    groups = [groups_by_rater.get(r.rater_id, "") for r in humans]
    return _center(_frame(humans, "rater_id"), "rater_id", groups)


def center_model(records: Sequence[RatingRecord]) -> List[CenteredRating]:
    """Subtract each prompt model's mean aggregate score over all images."""
    models = [r for r in records if r.rater_kind is RaterKind.MODEL]
    if len(models) != len(records):
        raise DataValidationError("center_model expects model ratings only")
    if not models:
        return []
    df = _frame(models, "prompt")
    return _center(df, "key", list(df["key"]))


def _group_key(group: RaterGroup | str) -> str:
    if isinstance(group, RaterGroup):
        return group.value
    return group


def surface_label(group: RaterGroup | str) -> str:
    if isinstance(group, RaterGroup):
        return GROUP_SURFACE_LABELS[group]
    try:
        return GROUP_SURFACE_LABELS[RaterGroup(group)]
    except ValueError:
        return group


def per_group_mean(
    centered: Sequence[CenteredRating],
    group: RaterGroup | str,
    locations: Mapping[str, Location],
    domain: Optional[Sequence[str]] = None,
) -> ScoreSurface:
    """Mean centered score per image within one group.

    ``group`` is a participant group or a prompt key. Images in ``domain``
    with no rating from the group are left out of the surface.
    """
    key = _group_key(group)
    sums: Dict[str, float] = {}
    counts: Dict[str, int] = {}
    for c in centered:
        if c.group != key:
            continue
        sums[c.point_id] = sums.get(c.point_id, 0.0) + c.adjusted
        counts[c.point_id] = counts.get(c.point_id, 0) + 1

    if domain is not None:
        absent = sorted(set(domain) - set(sums))
        if absent:
            logger.info(
                "Surface %s: %d image(s) without ratings excluded", surface_label(group), len(absent)
            )
        ids = sorted(set(domain) & set(sums))
    else:
        ids = sorted(sums)

    unknown = [pid for pid in ids if pid not in locations]
    if unknown:
        raise UnknownPointError(f"no location for point {unknown[0]!r}")

    return ScoreSurface(
        label=surface_label(group),
        values={pid: sums[pid] / counts[pid] for pid in ids},
        locations={pid: tuple(locations[pid]) for pid in ids},
    )


def pooled_centered_scores(centered: Sequence[CenteredRating], group: RaterGroup | str) -> np.ndarray:
    """All centered ratings of one group as a flat sample, ordered by (point_id, rater_id)."""
    key = _group_key(group)
    rows = sorted((c.point_id, c.rater_id, c.adjusted) for c in centered if c.group == key)
    return np.array([r[2] for r in rows], dtype=float)


def difference_surface(model: ScoreSurface, participant: ScoreSurface) -> DiffSurface:
    ids = sorted(set(model.values) & set(participant.values))
    if not ids:
        raise StatisticsError(
            f"surfaces {model.label} and {participant.label} share no images"
        )
    return DiffSurface(
        label=f"{model.label}-{participant.label}",
        values={pid: model.values[pid] - participant.values[pid] for pid in ids},
        locations={pid: model.locations[pid] for pid in ids},
        model_label=model.label,
        participant_label=participant.label,
    )
