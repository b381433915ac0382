# appeal/panel/ingest.py
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import AbstractSet, Dict, Iterable, List, Mapping, Optional, Sequence

import pandas as pd

from celine.appeal.core.errors import (
    DataValidationError,
    DuplicateError,
    ParseError,
    RangeError,
    UnknownPointError,
    UnknownRaterError,
)
from celine.appeal.panel.models import Rater, RaterGroup, RaterKind, RatingRecord
from celine.appeal.prompts.models import SCORE_MAX, SCORE_MIN, PromptModel

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ["rater_id", "point_id", "score"]
RATING_COLUMNS = ["rater_id", "point_id", "score", "rater_kind", "prompt", "criteria"]

_INT = re.compile(r"^\s*[+-]?\d+\s*$")


@dataclass
class IngestResult:
    records: List[RatingRecord] = field(default_factory=list)
    errors: List[DataValidationError] = field(default_factory=list)


def _read_csv(path: Path) -> pd.DataFrame:
    try:
        return pd.read_csv(path, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise DataValidationError(f"{path}: file is empty, expected a header row", line=1) from None
    except pd.errors.ParserError as exc:
        raise DataValidationError(f"{path}: malformed CSV: {exc}") from None


def _read_table(path: Path) -> pd.DataFrame:
    if not path.exists():
        raise FileNotFoundError(f"Ratings file does not exist: {path}")
    df = _read_csv(path)
    missing = [c for c in REQUIRED_COLUMNS if c not in df.columns]
    if missing:
        raise DataValidationError(f"{path}: missing columns {missing}", line=1)
    return df


def _parse_score(raw: str, kind: RaterKind, line: int) -> float:
    if kind is RaterKind.HUMAN:
        if not _INT.match(raw):
            raise ParseError(f"score {raw!r} is not an integer", line=line, raw_text=raw)
        value = float(int(raw))
    else:
        try:
            value = float(raw)
        except ValueError:
            raise ParseError(f"score {raw!r} is not a number", line=line, raw_text=raw) from None
    if not SCORE_MIN <= value <= SCORE_MAX:
        raise RangeError(
            f"score {raw.strip()} outside [{SCORE_MIN}, {SCORE_MAX}]", line=line, raw_text=raw
        )
    return value


def _parse_row(
    row: Mapping[str, str],
    line: int,
    known_points: Optional[AbstractSet[str]],
    known_raters: Optional[AbstractSet[str]],
) -> RatingRecord:
    rater_id = row["rater_id"].strip()
    point_id = row["point_id"].strip()
    if not rater_id or not point_id:
        raise ParseError("rater_id and point_id are required", line=line)

    kind_raw = (row.get("rater_kind") or "human").strip().lower()
    try:
        kind = RaterKind(kind_raw)
    except ValueError:
        raise ParseError(f"unknown rater_kind {kind_raw!r}", line=line, raw_text=kind_raw) from None

    prompt = (row.get("prompt") or "").strip() or None
    if kind is RaterKind.MODEL:
        if prompt is None:
            raise ParseError("model ratings need a prompt", line=line)
        try:
            prompt = PromptModel.from_key(prompt).key
        except ValueError as exc:
            raise ParseError(str(exc), line=line, raw_text=prompt) from None

    score = _parse_score(row["score"], kind, line)

    if known_points is not None and point_id not in known_points:
        raise UnknownPointError(f"unknown point_id {point_id!r}", line=line)
    if kind is RaterKind.HUMAN and known_raters is not None and rater_id not in known_raters:
        raise UnknownRaterError(f"unknown rater_id {rater_id!r}", line=line)

    return RatingRecord(
        rater_id=rater_id,
        point_id=point_id,
        score=score,
        rater_kind=kind,
        prompt=prompt,
        criteria=(row.get("criteria") or "").strip() or None,
    )


def ingest_ratings(
    path: Path,
    known_points: Optional[Iterable[str]] = None,
    raters: Optional[Sequence[Rater]] = None,
    *,
    strict: bool = True,
) -> IngestResult:
    """Validate a ratings CSV row by row.

    Line numbers count the header as line 1. In strict mode the first bad
    row raises; otherwise bad rows are logged, collected and skipped.
    """
    df = _read_table(path)
    points = set(known_points) if known_points is not None else None
    rater_ids = {r.id for r in raters} if raters is not None else None

    result = IngestResult()
    seen: Dict[tuple, int] = {}
    for idx, row in enumerate(df.to_dict(orient="records")):
        line = idx + 2
        try:
            record = _parse_row(row, line, points, rater_ids)
            if record.key in seen:
                raise DuplicateError(
                    f"duplicate rating for ({record.rater_id}, {record.point_id}"
                    + (f", {record.prompt}" if record.prompt else "")
                    + f"), first seen at line {seen[record.key]}",
                    line=line,
                )
        except DataValidationError as exc:
            if strict:
                raise
            logger.warning("Skipping row in %s: %s", path.name, exc)
            result.errors.append(exc)
            continue
        seen[record.key] = line
        result.records.append(record)

    logger.info(
        "Ingested %d ratings from %s (%d rejected)", len(result.records), path, len(result.errors)
    )
    return result


def load_raters(path: Path) -> List[Rater]:
    if not path.exists():
        raise FileNotFoundError(f"Raters file does not exist: {path}")
    df = _read_csv(path)
    for col in ("rater_id", "group"):
        if col not in df.columns:
            raise DataValidationError(f"{path}: missing column {col!r}", line=1)

    raters: List[Rater] = []
    seen: set[str] = set()
    for idx, row in enumerate(df.to_dict(orient="records")):
        line = idx + 2
        rid = row["rater_id"].strip()
        if rid in seen:
            raise DuplicateError(f"duplicate rater_id {rid!r}", line=line)
        try:
            group = RaterGroup.parse(row["group"])
        except ValueError:
            raise ParseError(f"unknown group {row['group']!r}", line=line, raw_text=row["group"]) from None
        seen.add(rid)
        raters.append(Rater(id=rid, group=group))
    return sorted(raters, key=lambda r: r.id)


def write_raters_csv(raters: Sequence[Rater], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(
        [(r.id, r.group.value) for r in sorted(raters, key=lambda r: r.id)],
        columns=["rater_id", "group"],
    ).to_csv(path, index=False, lineterminator="\n")


def _format_score(record: RatingRecord) -> str:
    if record.rater_kind is RaterKind.HUMAN:
        return str(int(record.score))
    return f"{record.score:.6f}".rstrip("0").rstrip(".")


def ratings_frame(records: Sequence[RatingRecord]) -> pd.DataFrame:
    ordered = sorted(records, key=lambda r: (r.rater_id, r.point_id, r.prompt or ""))
    return pd.DataFrame(
        [
            (
                r.rater_id,
                r.point_id,
                _format_score(r),
                r.rater_kind.value,
                r.prompt or "",
                r.criteria or "",
            )
            for r in ordered
        ],
        columns=RATING_COLUMNS,
    )


def write_ratings_csv(records: Sequence[RatingRecord], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    ratings_frame(records).to_csv(path, index=False, lineterminator="\n")
