from celine.appeal.backends.audit import AuditLog, read_audit
from celine.appeal.backends.base import (
    BackendRegistry,
    RatingBackend,
    get_backend,
    get_backend_registry,
)
from celine.appeal.backends.batch import BatchResult, batch_rate
from celine.appeal.backends.config import BackendConfig
from celine.appeal.backends.limiter import TokenBucket
from celine.appeal.backends.mock import MockBackend, mock_scores
from celine.appeal.backends.models import RatingFailure, RawModelRating
from celine.appeal.backends.remote import RemoteBackend

__all__ = [
    "AuditLog",
    "read_audit",
    "BackendRegistry",
    "RatingBackend",
    "get_backend",
    "get_backend_registry",
    "BatchResult",
    "batch_rate",
    "BackendConfig",
    "TokenBucket",
    "MockBackend",
    "mock_scores",
    "RatingFailure",
    "RawModelRating",
    "RemoteBackend",
]
