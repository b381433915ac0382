# appeal/core/logging.py
import logging
import sys
from typing import TextIO

from celine.appeal.core.config import get_settings

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
DATE_FORMAT = "%Y-%m-%dT%H:%M:%S%z"

# third-party loggers that are chatty at INFO while tiles and ratings are in flight
NOISY_LOGGERS = ("httpx", "httpcore", "PIL", "asyncio")


def setup_logging(level: str | None = None, stream: TextIO | None = None) -> None:
    """
    Configure logging for a pipeline run:
    - root logger = INFO on stderr (or ``stream``)
    - pipeline logs (celine.appeal) = ``level`` or settings.log_level
    - image and HTTP libraries reduced to WARNING
    """
    app_level = getattr(
        logging, (level or get_settings().log_level).upper(), logging.INFO
    )

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT))

    root = logging.getLogger()
    root.handlers.clear()
    root.setLevel(logging.INFO)
    root.addHandler(handler)

    logging.getLogger("celine.appeal").setLevel(app_level)

    for name in NOISY_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)
