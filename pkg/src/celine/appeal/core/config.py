# appeal/core/config.py
from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Literal, Optional

import yaml
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from celine.appeal.backends.config import BackendConfig

logger = logging.getLogger(__name__)


class PathSettings(BaseModel):
    network: Optional[Path] = Field(
        default=None, description="GeoJSON FeatureCollection of LineString streets"
    )
    landmarks: Optional[Path] = Field(
        default=None, description="Landmark GeoJSON points or CSV id,lon,lat"
    )
    tiles: Optional[Path] = Field(
        default=None, description="Directory of <point_id>_<heading>.png tiles"
    )
    ratings: Optional[Path] = Field(
        default=None, description="Human panel ratings CSV rater_id,point_id,score"
    )
    raters: Optional[Path] = Field(
        default=None, description="Rater roster CSV rater_id,group"
    )
    output_dir: Path = Path("./out")


class SamplingSettings(BaseModel):
    interval_m: float = Field(default=20.0, gt=0)
    random_n: int = Field(default=1000, ge=0)
    landmark_radius_m: float = Field(default=50.0, gt=0)
    dedup_epsilon_m: float = Field(default=1.0, ge=0)
    augment: bool = Field(
        default=True, description="Add interval samples near landmarks"
    )


class ImagerySettings(BaseModel):
    source: Literal["local", "remote"] = "local"
    endpoint: str = "https://maps.googleapis.com/maps/api/streetview"
    api_key_env: str = "APPEAL_TILE_API_KEY"
    max_workers: int = Field(default=4, ge=1)
    timeout_s: float = Field(default=30.0, gt=0)


class PanelSettings(BaseModel):
    coverage: int = Field(default=9, ge=1)
    per_rater_min: int = Field(default=500, ge=0)


class StatsSettings(BaseModel):
    weights_scheme: Literal["knn", "distance_band"] = "knn"
    k: int = Field(default=8, ge=1)
    band_m: float = Field(default=100.0, gt=0)
    permutations: int = Field(default=999, ge=1)
    gstar_permutations: int = Field(
        default=0, ge=0, description="0 means z-threshold inference for Gi*"
    )
    alpha: float = Field(default=0.05, gt=0, lt=1)
    t_variant: Literal["pooled", "welch"] = "pooled"
    wilcoxon_mode: Literal["auto", "signed_rank", "rank_sum"] = "auto"
    normality_rule: Literal["w_threshold", "p_value"] = "w_threshold"
    normality_w_min: float = Field(default=0.80, gt=0, le=1)


class Settings(BaseSettings):

    model_config = SettingsConfigDict(
        env_prefix="APPEAL_",
        env_nested_delimiter="__",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    app_name: str = "Appeal"
    env: Literal["dev", "prod", "test"] = "dev"
    log_level: str = "INFO"

    seed: int = 42
    strict: bool = Field(
        default=True,
        description="Abort on the first bad row or failed item instead of skipping it",
    )

    paths: PathSettings = Field(default_factory=PathSettings)
    sampling: SamplingSettings = Field(default_factory=SamplingSettings)
    imagery: ImagerySettings = Field(default_factory=ImagerySettings)
    backend: BackendConfig = Field(default_factory=BackendConfig)
    panel: PanelSettings = Field(default_factory=PanelSettings)
    stats: StatsSettings = Field(default_factory=StatsSettings)

    def snapshot(self) -> dict[str, Any]:
        """Protocol parameters recorded in stage manifests."""
        return {
            "seed": self.seed,
            "sampling": self.sampling.model_dump(mode="json"),
            "panel": self.panel.model_dump(mode="json"),
            "stats": self.stats.model_dump(mode="json"),
            "backend": self.backend.model_dump(
                mode="json", exclude={"endpoint", "api_key_env"}
            ),
        }


# ---------------------------------------------------------------------------
# Lazy settings management
# ---------------------------------------------------------------------------

_settings_override: Settings | None = None
_settings_instance: Settings | None = None


def _read_config_file(path: Path) -> dict:
    with open(path) as f:
        data = yaml.safe_load(f) or {}

    if not isinstance(data, dict):
        raise ValueError(f"Config file must be a mapping, got {type(data).__name__}")

    logger.info("Loaded config from %s", path)
    return data


def _load_yaml_config() -> dict:
    config_path = os.environ.get("APPEAL_CONFIG")
    if config_path is not None:
        path = Path(config_path)
        if not path.exists():
            raise FileNotFoundError(
                f"APPEAL_CONFIG points to missing file: {config_path}"
            )
    else:
        path = Path("./appeal.yaml")
        if not path.exists():
            return {}
    return _read_config_file(path)


def _without_env_overrides(data: dict, prefix: str = "APPEAL_") -> dict:
    """Drop file values that an environment variable also sets, at any nesting depth."""
    names = {name.upper() for name in os.environ}
    out = {}
    for key, value in data.items():
        env_name = f"{prefix}{key.upper()}"
        if env_name in names:
            continue
        if isinstance(value, dict):
            value = _without_env_overrides(value, env_name + "__")
        out[key] = value
    return out


def _build(data: dict) -> Settings:
    # env vars take precedence over file values
    return Settings(**_without_env_overrides(data))


def load_settings(path: Path) -> Settings:
    """Build settings from an explicit YAML (or JSON) file."""
    if not path.exists():
        raise FileNotFoundError(f"Config file does not exist: {path}")
    return _build(_read_config_file(path))


def get_settings() -> Settings:
    global _settings_instance
    if _settings_override is not None:
        return _settings_override
    if _settings_instance is not None:
        return _settings_instance
    _settings_instance = _build(_load_yaml_config())
    return _settings_instance


def configure(settings_override: Settings) -> None:
    global _settings_override
    _settings_override = settings_override


def reset_settings() -> None:
    global _settings_override, _settings_instance
    _settings_override = None
    _settings_instance = None
