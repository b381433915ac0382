# appeal/backends/audit.py
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional, TextIO


class AuditLog:
    """Append-only JSON-lines record of every rating attempt outcome."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self._fh: Optional[TextIO] = None

    def __enter__(self) -> "AuditLog":
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = self.path.open("a", encoding="utf-8", newline="\n")
        return self

    def __exit__(self, *exc: Any) -> None:
        self.close()

    def record(
        self,
        *,
        point_id: str,
        prompt: str,
        raw_text: Optional[str],
        attempts: int,
        elapsed_s: float,
        error: Optional[str] = None,
        params: Optional[dict[str, Any]] = None,
    ) -> None:
        if self._fh is None:
            raise RuntimeError("audit log is not open")
        entry = {
            "point_id": point_id,
            "prompt": prompt,
            "raw_text": raw_text,
            "attempts": attempts,
            "elapsed_s": round(elapsed_s, 3),
            "error": error,
        }
        if params:
            entry["params"] = params
        self._fh.write(json.dumps(entry, sort_keys=True) + "\n")
        self._fh.flush()

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None


def read_audit(path: Path) -> list[dict[str, Any]]:
    with Path(path).open("r", encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]
