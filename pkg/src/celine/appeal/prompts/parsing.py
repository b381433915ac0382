# appeal/prompts/parsing.py
"""Strict response parsing.

Whitespace around and inside the response is tolerated; anything else
(prose, decimals, missing brackets) is a ParseError. Checks run in the
order parse -> count -> range.
"""
from __future__ import annotations

import re
from typing import Optional, Sequence

import numpy as np

from celine.appeal.core.errors import CountMismatch, ParseError, RangeError
from celine.appeal.prompts.models import SCORE_MAX, SCORE_MIN, CriterionVector

VALID_COUNTS = (1, 5, 14)

_INT = re.compile(r"^[+-]?\d+$")
_BRACKETED = re.compile(r"^\[(.*)\]$", re.DOTALL)


def parse_response(text: str, expected: int) -> CriterionVector:
    if expected not in VALID_COUNTS:
        raise ValueError(f"expected must be one of {VALID_COUNTS}, got {expected}")

    body = text.strip()
    match = _BRACKETED.match(body)
    if match:
        inner = match.group(1).strip()
        tokens = [] if inner == "" else [t.strip() for t in inner.split(",")]
    elif _INT.match(body):
        tokens = [body]
    else:
        raise ParseError("response is not an integer or a bracketed list", raw_text=text)

    for token in tokens:
        if not _INT.match(token):
            raise ParseError(f"non-integer token {token!r}", raw_text=text)

    if len(tokens) != expected:
        raise CountMismatch(f"expected {expected} scores, got {len(tokens)}", raw_text=text)

    values = tuple(int(t) for t in tokens)
    for v in values:
        if not SCORE_MIN <= v <= SCORE_MAX:
            raise RangeError(f"score {v} outside [{SCORE_MIN}, {SCORE_MAX}]", raw_text=text)

    return CriterionVector(values)


def serialize_vector(scores: Sequence[int]) -> str:
    """Documented response format: ``5`` for one score, ``[4, 5, 3, 6, 5]`` otherwise."""
    if len(scores) == 1:
        return str(int(scores[0]))
    return "[" + ", ".join(str(int(s)) for s in scores) + "]"


def aggregate(v: CriterionVector, weights: Optional[Sequence[float]] = None) -> float:
    """Mean of the criterion scores; ``weights`` defaults to uniform."""
    scores = np.asarray(v.scores, dtype=float)
    if weights is None:
        return float(scores.mean())
    w = np.asarray(weights, dtype=float)
    if w.shape != scores.shape or (w < 0).any() or w.sum() <= 0:
        raise ValueError("weights must be non-negative, non-zero and match the vector length")
    return float((scores * w).sum() / w.sum())
