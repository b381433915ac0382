# tests/conftest.py
import logging

import pytest

from celine.appeal.core.config import reset_settings


@pytest.fixture(autouse=True)
def _clean_settings(monkeypatch):
    """Reset the settings singleton and keep a stray appeal.yaml out of tests."""
    monkeypatch.delenv("APPEAL_CONFIG", raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def restore_logging():
    root, app = logging.getLogger(), logging.getLogger("celine.appeal")
    handlers, level, app_level = list(root.handlers), root.level, app.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
    app.setLevel(app_level)
