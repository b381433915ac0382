# tests/backends/conftest.py
import pytest

from celine.appeal.backends.limiter import TokenBucket
from tests.helpers import uniform_panorama


@pytest.fixture
def green():
    return uniform_panorama("green", (0, 255, 0))


@pytest.fixture
def grey():
    return uniform_panorama("grey", (128, 128, 128))


@pytest.fixture
def fast_limiter():
    return TokenBucket(1e7)
