# appeal/panel/assignment.py
from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from celine.appeal.core.errors import ConfigError
from celine.appeal.panel.models import Assignment

logger = logging.getLogger(__name__)

ASSIGNMENT_COLUMNS = ["rater_id", "point_id", "sequence_index"]


def assign_batches(
    images: Sequence[str],
    raters: Sequence[str],
    coverage: int,
    per_rater_min: int,
    seed: int,
) -> Assignment:
    """Spread images over raters so each image gets ``coverage`` raters.

    Images are shuffled with ``seed`` and dealt round-robin: each image goes
    to the next ``coverage`` raters in id order, which keeps list lengths
    within one of each other. Raters still below ``per_rater_min`` are then
    topped up with images they do not have, least-covered first.
    """
    rater_ids = sorted(set(raters))
    image_ids = sorted(set(images))
    if len(rater_ids) != len(raters):
        raise ConfigError("rater ids must be unique")
    if not rater_ids or not image_ids:
        raise ConfigError("assignment needs at least one rater and one image")
    if coverage < 1:
        raise ConfigError(f"coverage must be >= 1, got {coverage}")
    if coverage > len(rater_ids):
        raise ConfigError(
            f"coverage {coverage} exceeds the number of raters ({len(rater_ids)})"
        )
    if per_rater_min > len(image_ids):
        raise ConfigError(
            f"per_rater_min {per_rater_min} exceeds the number of images ({len(image_ids)})"
        )

    rng = np.random.default_rng(seed)
    order = [image_ids[i] for i in rng.permutation(len(image_ids))]
    position = {pid: k for k, pid in enumerate(order)}

    lists: Dict[str, List[str]] = {r: [] for r in rater_ids}
    n = len(rater_ids)
    pointer = 0
    for pid in order:
        for j in range(coverage):
            lists[rater_ids[(pointer + j) % n]].append(pid)
        pointer = (pointer + coverage) % n

    counts = {pid: coverage for pid in order}
    topped = 0
    for r in rater_ids:
        have = set(lists[r])
        need = per_rater_min - len(lists[r])
        if need <= 0:
            continue
        extra = sorted(
            (pid for pid in order if pid not in have),
            key=lambda pid: (counts[pid], position[pid]),
        )[:need]
        for pid in extra:
            lists[r].append(pid)
            counts[pid] += 1
        topped += len(extra)

    logger.info(
        "Assigned %d images to %d raters (coverage %d, %d top-up ratings)",
        len(image_ids),
        n,
        coverage,
        topped,
    )
    return Assignment(lists=lists)


def assignment_frame(assignment: Assignment) -> pd.DataFrame:
    rows = [
        (r, pid, k)
        for r in assignment.rater_ids()
        for k, pid in enumerate(assignment.lists[r])
    ]
    return pd.DataFrame(rows, columns=ASSIGNMENT_COLUMNS)


def write_assignment_csv(assignment: Assignment, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    assignment_frame(assignment).to_csv(path, index=False, lineterminator="\n")


def read_assignment_csv(path: Path) -> Assignment:
    df = pd.read_csv(path, dtype={"rater_id": str, "point_id": str})
    lists: Dict[str, List[str]] = {}
    for r, group in df.sort_values(["rater_id", "sequence_index"]).groupby("rater_id", sort=True):
        lists[str(r)] = group["point_id"].tolist()
    return Assignment(lists=lists)
