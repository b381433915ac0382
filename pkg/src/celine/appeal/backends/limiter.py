# appeal/backends/limiter.py
from __future__ import annotations

import asyncio
import time
from typing import Awaitable, Callable, Optional


class TokenBucket:
    """Async token bucket shared by all in-flight requests of a batch.

    Refills ``rate_per_minute / 60`` tokens per second up to ``capacity``.
    With capacity 1 the n-th acquisition happens no earlier than
    ``(n - 1) * 60 / rate_per_minute`` seconds after the first.
    """

    def __init__(
        self,
        rate_per_minute: float,
        capacity: float = 1.0,
        *,
        clock: Optional[Callable[[], float]] = None,
        sleep: Optional[Callable[[float], Awaitable[None]]] = None,
    ):
        if rate_per_minute <= 0:
            raise ValueError("rate_per_minute must be > 0")
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.rate = rate_per_minute / 60.0
        self.capacity = float(capacity)
        self._clock = clock or time.monotonic
        self._sleep = sleep or asyncio.sleep
        self._tokens = self.capacity
        self._updated: Optional[float] = None
        self._lock = asyncio.Lock()

    def _refill(self, now: float) -> None:
        if self._updated is not None:
            self._tokens = min(self.capacity, self._tokens + (now - self._updated) * self.rate)
        self._updated = now

    async def acquire(self) -> None:
        async with self._lock:
            self._refill(self._clock())
            while self._tokens < 1.0:
                await self._sleep((1.0 - self._tokens) / self.rate)
                self._refill(self._clock())
            self._tokens -= 1.0
