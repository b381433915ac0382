# tests/backends/test_mock_and_limiter.py
from __future__ import annotations

import pytest

from celine.appeal.backends.base import BackendRegistry, get_backend, get_backend_registry
from celine.appeal.backends.config import BackendConfig
from celine.appeal.backends.limiter import TokenBucket
from celine.appeal.backends.mock import MockBackend, mock_scores
from celine.appeal.core.errors import ConfigError
from celine.appeal.imagery.panorama import green_fraction
from celine.appeal.prompts.models import Persona, PromptModel, Tier, all_prompt_models
from tests.helpers import uniform_panorama


class TestMockBackend:
    async def test_all_green_rates_seven(self, green):
        backend = MockBackend(BackendConfig())
        for m in all_prompt_models():
            rating = await backend.rate(green, m)
            assert rating.vector.scores == (7,) * m.criteria_count
            assert rating.aggregate == 7

    async def test_grey_rates_one(self, grey):
        backend = MockBackend(BackendConfig())
        for m in all_prompt_models():
            rating = await backend.rate(grey, m)
            assert rating.vector.scores == (1,) * m.criteria_count

    async def test_deterministic(self, green):
        backend = MockBackend(BackendConfig(seed=5))
        m = PromptModel(Tier.MODEL3, Persona.NR)
        assert await backend.rate(green, m) == await backend.rate(green, m)

    def test_scores_depend_on_persona_and_seed(self):
        lr = PromptModel(Tier.MODEL3, Persona.LR)
        nr = PromptModel(Tier.MODEL3, Persona.NR)
        assert mock_scores(0.5, lr, 0) != mock_scores(0.5, nr, 0)
        assert mock_scores(0.5, lr, 0) == mock_scores(0.5, lr, 0)
        assert all(1 <= s <= 7 for s in mock_scores(0.5, lr, 3))

    def test_green_fraction_is_chromatic_excess(self):
        # (3G - S) / (2S + 1) with S = 300: 150 / 601
        pan = uniform_panorama("olive", (100, 150, 50))
        g = green_fraction(pan)
        assert g == pytest.approx(150 / 601)
        assert mock_scores(g, PromptModel(Tier.MODEL2, Persona.LR), 0) == (2, 3, 3, 3, 2)

    def test_neutral_pixels_have_no_green(self):
        for rgb in [(0, 0, 0), (128, 128, 128), (255, 255, 255)]:
            assert green_fraction(uniform_panorama("n", rgb)) == 0.0
        assert green_fraction(uniform_panorama("m", (255, 0, 255))) == 0.0

    def test_round_half_up(self):
        # 1 + 6 * 0.25 = 2.5 before the sine term; seed chosen so sin(seed) == 0
        assert mock_scores(0.25, PromptModel(Tier.MODEL1, Persona.LR), 0) == (3,)


class TestRegistry:
    def test_builtins(self):
        reg = get_backend_registry()
        assert reg.get("mock") is MockBackend
        assert reg.get("remote") is not None

    def test_unknown_kind(self):
        with pytest.raises(ConfigError):
            get_backend(BackendConfig(kind="nope"))

    def test_duplicate_registration(self):
        reg = BackendRegistry()
        reg.register("x", MockBackend)
        with pytest.raises(ValueError):
            reg.register("x", MockBackend)

    def test_remote_requires_endpoint(self):
        with pytest.raises(ValueError):
            BackendConfig(kind="remote")


class _FakeTime:
    def __init__(self):
        self.now = 0.0
        self.acquired: list[float] = []

    def clock(self) -> float:
        return self.now

    async def sleep(self, seconds: float) -> None:
        self.now += seconds


class TestTokenBucket:
    async def test_spacing_at_60_per_minute(self):
        t = _FakeTime()
        bucket = TokenBucket(60, clock=t.clock, sleep=t.sleep)
        for _ in range(5):
            await bucket.acquire()
            t.acquired.append(t.now)
        assert t.acquired == pytest.approx([0, 1, 2, 3, 4])

    async def test_batch_of_120_needs_119_seconds(self):
        t = _FakeTime()
        bucket = TokenBucket(60, clock=t.clock, sleep=t.sleep)
        for _ in range(120):
            await bucket.acquire()
        assert t.now == pytest.approx(119.0)

    async def test_idle_time_refills_up_to_capacity(self):
        t = _FakeTime()
        bucket = TokenBucket(60, capacity=2, clock=t.clock, sleep=t.sleep)
        await bucket.acquire()
        await bucket.acquire()
        t.now = 100.0
        for _ in range(3):
            await bucket.acquire()
        # two banked tokens, then one second for the third
        assert t.now == pytest.approx(101.0)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            TokenBucket(0)
        with pytest.raises(ValueError):
            TokenBucket(60, capacity=0.5)
