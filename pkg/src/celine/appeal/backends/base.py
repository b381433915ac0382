# appeal/backends/base.py
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib.metadata import entry_points
from typing import Awaitable, Callable, Dict, Optional, Protocol

from celine.appeal.backends.config import BackendConfig
from celine.appeal.backends.models import RawModelRating
from celine.appeal.core.errors import ConfigError
from celine.appeal.imagery.panorama import Panorama
from celine.appeal.prompts.models import PromptModel

logger = logging.getLogger(__name__)

ENTRY_POINT_GROUP = "celine.appeal.backends"

# awaited once per outbound request
Throttle = Callable[[], Awaitable[None]]


class RatingBackend(Protocol):
    """Backend contract.

    A backend turns one panorama and one prompt model into a parsed rating,
    performing its own retries. It awaits ``throttle`` before every request
    it sends, retries included. Batching and concurrency belong to
    ``batch_rate``, which passes the shared rate limiter as ``throttle``.
    """

    name: str

    async def rate(
        self, pan: Panorama, m: PromptModel, throttle: Optional[Throttle] = None
    ) -> RawModelRating: ...

    async def aclose(self) -> None: ...


BackendFactory = Callable[[BackendConfig], RatingBackend]


@dataclass
class BackendRegistry:
    """Backend factories keyed by ``BackendConfig.kind``."""

    factories: Dict[str, BackendFactory] = field(default_factory=dict)

    def get(self, kind: str) -> Optional[BackendFactory]:
        return self.factories.get(kind)

    def register(self, kind: str, factory: BackendFactory) -> None:
        if kind in self.factories:
            raise ValueError(f"Duplicate rating backend kind: {kind}")
        self.factories[kind] = factory

    def create(self, config: BackendConfig) -> RatingBackend:
        factory = self.get(config.kind)
        if factory is None:
            raise ConfigError(f"unknown rating backend kind {config.kind!r}")
        return factory(config)


_registry: BackendRegistry | None = None


def get_backend_registry() -> BackendRegistry:
    global _registry
    if _registry is not None:
        return _registry

    from celine.appeal.backends.mock import MockBackend
    from celine.appeal.backends.remote import RemoteBackend

    reg = BackendRegistry()
    # built-ins
    reg.register("mock", MockBackend)
    reg.register("remote", RemoteBackend)
    _registry = reg

    for ep in entry_points(group=ENTRY_POINT_GROUP):
        try:
            reg.register(ep.name, ep.load())
            logger.info("Loaded entry-point rating backend: %s", ep.name)
        except Exception:
            logger.exception("Failed to load entry-point rating backend: %s", ep.name)

    return reg


def get_backend(config: BackendConfig) -> RatingBackend:
    return get_backend_registry().create(config)
