# tests/core/test_logging.py
import io
import logging

from celine.appeal.core.config import Settings, configure
from celine.appeal.core.logging import setup_logging


class TestSetupLogging:
    def test_explicit_level(self, restore_logging):
        stream = io.StringIO()
        setup_logging("debug", stream=stream)
        logging.getLogger("celine.appeal.sampling").debug("sampled %d points", 3)
        assert logging.getLogger("celine.appeal").level == logging.DEBUG
        assert logging.getLogger("httpx").level == logging.WARNING
        line = stream.getvalue().strip()
        assert line.endswith("| DEBUG | celine.appeal.sampling | sampled 3 points")

    def test_level_from_settings(self, restore_logging):
        configure(Settings(log_level="WARNING"))
        stream = io.StringIO()
        setup_logging(stream=stream)
        logging.getLogger("celine.appeal.stats").info("hidden")
        assert stream.getvalue() == ""
        assert len(logging.getLogger().handlers) == 1
