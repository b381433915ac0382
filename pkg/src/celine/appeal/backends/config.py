# appeal/backends/config.py
from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator


class BackendConfig(BaseModel):
    """Rating backend configuration.

    Generation parameters (``model``, ``temperature``, ``max_tokens``,
    ``image_detail``) are only used by the remote backend but are always
    recorded in the audit log next to each rating.
    """

    kind: str = Field(
        default="mock",
        description="Registered backend name: mock, remote or an entry-point plugin",
    )
    endpoint: Optional[str] = Field(
        default=None,
        description="Chat-completions URL of the remote multimodal API",
    )
    api_key_env: str = Field(
        default="APPEAL_API_KEY",
        description="Environment variable holding the API credential",
    )
    model: str = "gpt-4o"
    temperature: float = Field(default=0.0, ge=0.0, le=2.0)
    max_tokens: int = Field(default=64, ge=1)
    image_detail: Literal["auto", "low", "high"] = "auto"

    max_in_flight: int = Field(default=4, ge=1)
    requests_per_minute: float = Field(default=60.0, gt=0)
    max_retries: int = Field(default=3, ge=0)
    backoff_base_s: float = Field(default=1.0, ge=0)
    backoff_factor: float = Field(default=2.0, ge=1.0)
    timeout_s: float = Field(default=60.0, gt=0)

    seed: int = Field(default=0, description="Mock oracle seed")

    @model_validator(mode="after")
    def _remote_needs_endpoint(self) -> "BackendConfig":
        if self.kind == "remote" and not self.endpoint:
            raise ValueError("backend.endpoint is required when kind is 'remote'")
        return self
