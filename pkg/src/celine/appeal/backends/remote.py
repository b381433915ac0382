# appeal/backends/remote.py
from __future__ import annotations

import asyncio
import base64
import io
import logging
import os
import random
from typing import Any, Awaitable, Callable, Optional

import httpx
from PIL import Image

from celine.appeal.backends.base import Throttle
from celine.appeal.backends.config import BackendConfig
from celine.appeal.backends.models import RawModelRating
from celine.appeal.core.errors import (
    AuthenticationError,
    BackendError,
    BackendExhausted,
    ConfigError,
    DataValidationError,
)
from celine.appeal.imagery.panorama import Panorama
from celine.appeal.prompts.models import PromptModel
from celine.appeal.prompts.parsing import aggregate, parse_response
from celine.appeal.prompts.render import render_prompt

logger = logging.getLogger(__name__)

AUTH_STATUS = {401, 403}


class _Retryable(Exception):
    def __init__(self, message: str, raw_text: Optional[str] = None):
        super().__init__(message)
        self.raw_text = raw_text


def encode_png_data_url(pan: Panorama) -> str:
    buf = io.BytesIO()
    Image.fromarray(pan.image).save(buf, format="PNG")
    return "data:image/png;base64," + base64.b64encode(buf.getvalue()).decode("ascii")


def _extract_content(payload: Any) -> str:
    try:
        content = payload["choices"][0]["message"]["content"]
    except (KeyError, IndexError, TypeError):
        raise _Retryable("response has no choices[0].message.content")
    if isinstance(content, list):
        content = "".join(part.get("text", "") for part in content if isinstance(part, dict))
    if not isinstance(content, str):
        raise _Retryable("response content is not text")
    return content


class RemoteBackend:
    """OpenAI-compatible chat-completions client.

    One request carries the rendered prompt and the panorama as a base64 PNG
    data URL. Transport errors, HTTP 429/5xx and unparseable answers are
    retried with exponential backoff and jitter; 401/403 fail immediately.
    """

    name = "remote"

    def __init__(
        self,
        config: BackendConfig,
        *,
        client: Optional[httpx.AsyncClient] = None,
        sleep: Optional[Callable[[float], Awaitable[None]]] = None,
        rng: Optional[random.Random] = None,
    ):
        if not config.endpoint:
            raise ConfigError("backend.endpoint is required for the remote backend")
        key = os.environ.get(config.api_key_env)
        if not key:
            raise ConfigError(f"environment variable {config.api_key_env} is not set")
        self.config = config
        self._client = client or httpx.AsyncClient(timeout=config.timeout_s)
        self._headers = {"Authorization": f"Bearer {key}"}
        self._sleep = sleep or asyncio.sleep
        self._rng = rng or random.Random(config.seed)

    def build_payload(self, pan: Panorama, m: PromptModel) -> dict[str, Any]:
        return {
            "model": self.config.model,
            "temperature": self.config.temperature,
            "max_tokens": self.config.max_tokens,
            "messages": [
                {
                    "role": "user",
                    "content": [
                        {"type": "text", "text": render_prompt(m)},
                        {
                            "type": "image_url",
                            "image_url": {
                                "url": encode_png_data_url(pan),
                                "detail": self.config.image_detail,
                            },
                        },
                    ],
                }
            ],
        }

    def backoff_delay(self, attempt: int) -> float:
        """Delay before retry ``attempt`` (1-based): base * factor^(attempt-1), plus up to 25% jitter."""
        delay = self.config.backoff_base_s * self.config.backoff_factor ** (attempt - 1)
        return delay * (1.0 + 0.25 * self._rng.random())

    async def _attempt(self, payload: dict[str, Any], m: PromptModel) -> tuple[str, Any]:
        try:
            resp = await self._client.post(self.config.endpoint, json=payload, headers=self._headers)
        except httpx.TransportError as exc:
            raise _Retryable(f"transport error: {exc}")

        if resp.status_code in AUTH_STATUS:
            raise AuthenticationError(f"rating API refused credentials (HTTP {resp.status_code})")
        if resp.status_code == 429 or resp.status_code >= 500:
            raise _Retryable(f"HTTP {resp.status_code}", raw_text=resp.text)
        if resp.status_code >= 400:
            raise BackendError(f"rating API rejected the request (HTTP {resp.status_code}): {resp.text[:200]}")

        try:
            body = resp.json()
        except ValueError:
            raise _Retryable("response is not JSON", raw_text=resp.text)
        text = _extract_content(body)
        try:
            return text, parse_response(text, m.criteria_count)
        except DataValidationError as exc:
            raise _Retryable(str(exc), raw_text=text)

    async def rate(
        self, pan: Panorama, m: PromptModel, throttle: Optional[Throttle] = None
    ) -> RawModelRating:
        payload = self.build_payload(pan, m)
        attempts = self.config.max_retries + 1
        last_error = ""
        last_raw: Optional[str] = None

        for attempt in range(1, attempts + 1):
            if throttle is not None:
                await throttle()
            try:
                text, vector = await self._attempt(payload, m)
            except _Retryable as exc:
                last_error = str(exc)
                last_raw = exc.raw_text if exc.raw_text is not None else last_raw
                logger.debug(
                    "Attempt %d/%d for %s %s failed: %s", attempt, attempts, pan.point_id, m.key, exc
                )
                if attempt < attempts:
                    await self._sleep(self.backoff_delay(attempt))
                continue

            logger.debug(
                "Rated %s %s (model=%s temperature=%s detail=%s attempts=%d)",
                pan.point_id,
                m.key,
                self.config.model,
                self.config.temperature,
                self.config.image_detail,
                attempt,
            )
            return RawModelRating(
                point_id=pan.point_id,
                prompt=m,
                vector=vector,
                aggregate=aggregate(vector),
                attempt_count=attempt,
                raw_text=text,
            )

        raise BackendExhausted(
            f"{pan.point_id} {m.key}: gave up after {attempts} attempts ({last_error})",
            attempts=attempts,
            raw_text=last_raw,
        )

    async def aclose(self) -> None:
        await self._client.aclose()
