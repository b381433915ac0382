# appeal/pipeline/manifest.py
"""Per-stage manifests.

Manifests carry no timestamps: identical inputs, config and seed give
byte-identical manifests.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field

from celine.appeal import __version__
from celine.appeal.core.errors import ManifestMismatch
from celine.appeal.core.utils import read_json, sha256_file, write_json

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


class Manifest(BaseModel):
    stage: str
    version: str = __version__
    seed: int
    inputs: Dict[str, str] = Field(default_factory=dict, description="name -> sha256")
    outputs: Dict[str, str] = Field(default_factory=dict, description="name -> sha256")
    counts: Dict[str, Any] = Field(default_factory=dict)
    config: Dict[str, Any] = Field(default_factory=dict)

    def sample_hash(self) -> Optional[str]:
        return self.inputs.get("points.csv") or self.outputs.get("points.csv")


def hash_files(**paths: Optional[Path]) -> Dict[str, str]:
    """sha256 of each existing file, keyed by the file name."""
    out: Dict[str, str] = {}
    for path in paths.values():
        if path is not None and path.exists():
            out[path.name] = sha256_file(path)
    return out


def write_manifest(stage_dir: Path, manifest: Manifest) -> Path:
    path = stage_dir / MANIFEST_NAME
    write_json(path, manifest.model_dump(mode="json"))
    logger.debug("Wrote manifest %s", path)
    return path


def read_manifest(stage_dir: Path) -> Optional[Manifest]:
    path = stage_dir / MANIFEST_NAME
    if not path.exists():
        return None
    return Manifest.model_validate(read_json(path))


def check_same_sample(*manifests: Optional[Manifest]) -> Optional[str]:
    """Raise if stage manifests were produced from different point sets."""
    hashes = {m.stage: m.sample_hash() for m in manifests if m is not None and m.sample_hash()}
    if len(set(hashes.values())) > 1:
        detail = ", ".join(f"{stage}={h[:12]}" for stage, h in sorted(hashes.items()))
        raise ManifestMismatch(f"stages were built from different sample sets: {detail}")
    return next(iter(hashes.values()), None)
