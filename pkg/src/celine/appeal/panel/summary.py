# appeal/panel/summary.py
from __future__ import annotations

from collections import Counter
from typing import Optional, Sequence

from celine.appeal.panel.models import PanelSummary, Rater, RatingRecord


def panel_summary(
    records: Sequence[RatingRecord], raters: Optional[Sequence[Rater]] = None
) -> PanelSummary:
    if not records:
        return PanelSummary()

    per_rater = Counter(r.rater_id for r in records)
    per_image = Counter(r.point_id for r in records)
    per_group: Counter[str] = Counter()
    if raters is not None:
        groups = {r.id: r.group.value for r in raters}
        for rec in records:
            per_group[groups.get(rec.rater_id, "unknown")] += 1

    return PanelSummary(
        total=len(records),
        per_rater=dict(sorted(per_rater.items())),
        per_image=dict(sorted(per_image.items())),
        per_group=dict(sorted(per_group.items())),
        min_per_image=min(per_image.values()),
        mean_per_image=len(records) / len(per_image),
        mean_per_rater=len(records) / len(per_rater),
    )
