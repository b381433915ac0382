# appeal/backends/batch.py
from __future__ import annotations

import asyncio
import logging
import time
from dataclasses import dataclass, field
from typing import AbstractSet, Any, List, Optional, Sequence, Tuple, Union

from celine.appeal.backends.audit import AuditLog
from celine.appeal.backends.base import RatingBackend
from celine.appeal.backends.limiter import TokenBucket
from celine.appeal.backends.models import RatingFailure, RawModelRating
from celine.appeal.core.errors import AppealError, AuthenticationError
from celine.appeal.imagery.panorama import Panorama, PanoramaFile
from celine.appeal.prompts.models import PromptModel

logger = logging.getLogger(__name__)

PanoramaLike = Union[Panorama, PanoramaFile]


def _first_leaf(eg: BaseExceptionGroup) -> BaseException:
    exc: BaseException = eg
    while isinstance(exc, BaseExceptionGroup):
        exc = exc.exceptions[0]
    return exc


def _sort_key(item: Union[RawModelRating, RatingFailure]) -> Tuple[str, str, str]:
    return (item.point_id, item.prompt.tier.value, item.prompt.persona.value)


@dataclass
class BatchResult:
    ratings: List[RawModelRating] = field(default_factory=list)
    failures: List[RatingFailure] = field(default_factory=list)
    skipped: int = 0


async def _load(pan: PanoramaLike) -> Panorama:
    if isinstance(pan, Panorama):
        return pan
    return await asyncio.to_thread(pan.load)


async def batch_rate(
    pans: Sequence[PanoramaLike],
    models: Sequence[PromptModel],
    backend: RatingBackend,
    *,
    max_in_flight: int = 4,
    requests_per_minute: float = 60.0,
    skip: Optional[AbstractSet[Tuple[str, str]]] = None,
    audit: Optional[AuditLog] = None,
    limiter: Optional[TokenBucket] = None,
    audit_params: Optional[dict[str, Any]] = None,
) -> BatchResult:
    """Rate every (panorama, prompt model) pair.

    ``skip`` holds ``(point_id, prompt_key)`` pairs already rated by an earlier
    run. Item failures are collected; only authentication problems abort.
    Output is sorted by (point_id, tier, persona).
    """
    if not pans or not models:
        raise ValueError("batch_rate needs at least one panorama and one prompt model")
    if max_in_flight < 1:
        raise ValueError("max_in_flight must be >= 1")

    skip = skip or set()
    limiter = limiter or TokenBucket(requests_per_minute)
    in_flight = asyncio.Semaphore(max_in_flight)
    # bounds decoded panoramas held in memory
    slots = asyncio.Semaphore(max_in_flight)
    result = BatchResult()

    async def rate_one(pan: Panorama, m: PromptModel) -> None:
        async with in_flight:
            started = time.monotonic()
            try:
                rating = await backend.rate(pan, m, throttle=limiter.acquire)
            except AuthenticationError:
                raise
            except AppealError as exc:
                attempts = getattr(exc, "attempts", 1)
                raw = getattr(exc, "raw_text", None)
                logger.warning("Rating %s %s failed: %s", pan.point_id, m.key, exc)
                result.failures.append(
                    RatingFailure(pan.point_id, m, str(exc), attempt_count=attempts, raw_text=raw)
                )
                if audit is not None:
                    audit.record(
                        point_id=pan.point_id,
                        prompt=m.key,
                        raw_text=raw,
                        attempts=attempts,
                        elapsed_s=time.monotonic() - started,
                        error=str(exc),
                        params=audit_params,
                    )
                return

        result.ratings.append(rating)
        if audit is not None:
            audit.record(
                point_id=rating.point_id,
                prompt=m.key,
                raw_text=rating.raw_text,
                attempts=rating.attempt_count,
                elapsed_s=time.monotonic() - started,
                params=audit_params,
            )

    async def rate_point(source: PanoramaLike, todo: List[PromptModel]) -> None:
        async with slots:
            try:
                pan = await _load(source)
            except (AppealError, OSError) as exc:
                logger.warning("Cannot load panorama %s: %s", source.point_id, exc)
                result.failures.extend(
                    RatingFailure(source.point_id, m, str(exc), attempt_count=0) for m in todo
                )
                return
            await asyncio.gather(*(rate_one(pan, m) for m in todo))

    jobs = []
    for source in pans:
        todo = [m for m in models if (source.point_id, m.key) not in skip]
        result.skipped += len(models) - len(todo)
        if todo:
            jobs.append(rate_point(source, todo))

    logger.info(
        "Rating %d items with backend %s (%d already done)",
        sum(len(models) for _ in pans) - result.skipped,
        backend.name,
        result.skipped,
    )
    try:
        async with asyncio.TaskGroup() as tg:
            for job in jobs:
                tg.create_task(job)
    except ExceptionGroup as eg:
        auth = eg.subgroup(AuthenticationError)
        if auth is not None:
            raise _first_leaf(auth) from None
        raise

    result.ratings.sort(key=_sort_key)
    result.failures.sort(key=_sort_key)
    logger.info("Rated %d items, %d failures", len(result.ratings), len(result.failures))
    return result
