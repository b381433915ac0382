# tests/backends/test_remote.py
from __future__ import annotations

import json

import httpx
import pytest

from celine.appeal.backends.batch import batch_rate
from celine.appeal.backends.config import BackendConfig
from celine.appeal.backends.limiter import TokenBucket
from celine.appeal.backends.remote import RemoteBackend
from celine.appeal.core.errors import AuthenticationError, BackendError, BackendExhausted, ConfigError
from celine.appeal.prompts.models import Persona, PromptModel, Tier

ENDPOINT = "https://rating.test/v1/chat/completions"
MODEL2 = PromptModel(Tier.MODEL2, Persona.LR)


def _chat(content: str) -> httpx.Response:
    return httpx.Response(200, json={"choices": [{"message": {"role": "assistant", "content": content}}]})


class Scripted:
    """Replays a fixed list of responses and records each request body."""

    def __init__(self, *responses):
        self.responses = list(responses)
        self.requests = []

    def __call__(self, request: httpx.Request) -> httpx.Response:
        self.requests.append(json.loads(request.content))
        item = self.responses.pop(0)
        if isinstance(item, Exception):
            raise item
        return item


@pytest.fixture
def api_key(monkeypatch):
    monkeypatch.setenv("APPEAL_API_KEY", "sk-test")


def _backend(handler, sleeps=None, **overrides) -> RemoteBackend:
    config = BackendConfig(kind="remote", endpoint=ENDPOINT, **overrides)

    async def fake_sleep(seconds: float) -> None:
        if sleeps is not None:
            sleeps.append(seconds)

    client = httpx.AsyncClient(transport=httpx.MockTransport(handler))
    return RemoteBackend(config, client=client, sleep=fake_sleep)


class TestRemoteBackend:
    async def test_success_first_attempt(self, api_key, green):
        handler = Scripted(_chat("[4, 5, 3, 6, 5]"))
        backend = _backend(handler)
        rating = await backend.rate(green, MODEL2)
        await backend.aclose()

        assert rating.vector.scores == (4, 5, 3, 6, 5)
        assert rating.aggregate == pytest.approx(4.6)
        assert rating.attempt_count == 1
        assert rating.raw_text == "[4, 5, 3, 6, 5]"

        body = handler.requests[0]
        assert body["temperature"] == 0.0
        content = body["messages"][0]["content"]
        assert content[0]["type"] == "text" and "[##, ##, ##, ##, ##]" in content[0]["text"]
        assert content[1]["image_url"]["url"].startswith("data:image/png;base64,")
        assert content[1]["image_url"]["detail"] == "auto"

    async def test_retries_parse_errors_then_succeeds(self, api_key, green):
        sleeps = []
        handler = Scripted(
            _chat("The image is pleasant, I would say 5."),
            httpx.Response(503, text="busy"),
            _chat("[4, 5, 3, 6, 5]"),
        )
        rating = await _backend(handler, sleeps).rate(green, MODEL2)
        assert rating.attempt_count == 3
        assert len(sleeps) == 2
        # base 1 s, factor 2, jitter up to 25%
        assert 1.0 <= sleeps[0] <= 1.25
        assert 2.0 <= sleeps[1] <= 2.5

    async def test_exhaustion_keeps_last_raw_text(self, api_key, green):
        handler = Scripted(*[_chat("[4, 5, 3]") for _ in range(3)])
        with pytest.raises(BackendExhausted) as excinfo:
            await _backend(handler, max_retries=2).rate(green, MODEL2)
        assert excinfo.value.attempts == 3
        assert excinfo.value.raw_text == "[4, 5, 3]"
        assert handler.responses == []

    async def test_transport_errors_are_retried(self, api_key, green):
        handler = Scripted(httpx.ConnectError("down"), httpx.Response(429), _chat("[1, 1, 1, 1, 1]"))
        rating = await _backend(handler).rate(green, MODEL2)
        assert rating.attempt_count == 3

    @pytest.mark.parametrize("status", [401, 403])
    async def test_auth_failure_is_not_retried(self, api_key, green, status):
        handler = Scripted(httpx.Response(status), _chat("[1, 1, 1, 1, 1]"))
        with pytest.raises(AuthenticationError):
            await _backend(handler).rate(green, MODEL2)
        assert len(handler.requests) == 1

    async def test_client_error_fails_fast(self, api_key, green):
        handler = Scripted(httpx.Response(400, text="bad image"))
        with pytest.raises(BackendError) as excinfo:
            await _backend(handler).rate(green, MODEL2)
        assert not isinstance(excinfo.value, BackendExhausted)

    def test_missing_key(self, monkeypatch):
        monkeypatch.delenv("APPEAL_API_KEY", raising=False)
        with pytest.raises(ConfigError):
            RemoteBackend(BackendConfig(kind="remote", endpoint=ENDPOINT))


class CountingBucket(TokenBucket):
    def __init__(self):
        super().__init__(1e7)
        self.acquired = 0

    async def acquire(self) -> None:
        self.acquired += 1
        await super().acquire()


# ---------------------------------------------------------------------------
# Rate limiting covers retries
# ---------------------------------------------------------------------------


class TestThrottlePerRequest:
    async def test_every_attempt_takes_a_token(self, api_key, green):
        handler = Scripted(httpx.Response(429), httpx.Response(429), httpx.Response(429), _chat("[2, 3, 3, 3, 2]"))
        bucket = CountingBucket()
        rating = await _backend(handler).rate(green, MODEL2, throttle=bucket.acquire)
        assert rating.attempt_count == 4
        assert bucket.acquired == len(handler.requests) == 4

    async def test_batch_tokens_match_posts(self, api_key, green):
        handler = Scripted(httpx.Response(503), _chat("[4, 4, 4, 4, 4]"))
        bucket = CountingBucket()
        result = await batch_rate([green], [MODEL2], _backend(handler), limiter=bucket)
        assert len(result.ratings) == 1
        assert bucket.acquired == len(handler.requests) == 2

    async def test_spacing_holds_across_retries(self, api_key, green):
        now = [0.0]
        stamps = []

        async def fake_sleep(seconds: float) -> None:
            now[0] += seconds

        def handler(request: httpx.Request) -> httpx.Response:
            stamps.append(now[0])
            return httpx.Response(429) if len(stamps) < 3 else _chat("[5, 5, 5, 5, 5]")

        config = BackendConfig(kind="remote", endpoint=ENDPOINT, backoff_base_s=0.0)
        client = httpx.AsyncClient(transport=httpx.MockTransport(handler))
        backend = RemoteBackend(config, client=client, sleep=fake_sleep)
        bucket = TokenBucket(60, clock=lambda: now[0], sleep=fake_sleep)
        await backend.rate(green, MODEL2, throttle=bucket.acquire)
        assert stamps == pytest.approx([0.0, 1.0, 2.0])
