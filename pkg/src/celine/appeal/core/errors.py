# appeal/core/errors.py
"""Exception hierarchy.

Every error the pipeline can surface to an operator derives from
``AppealError`` and carries the process exit code the CLI maps it to:

  1  usage / configuration problem
  2  data validation problem (bad rows, bad responses, degenerate statistics)
  3  rating backend exhausted or refused authentication
"""
from __future__ import annotations

from typing import Optional


class AppealError(Exception):
    exit_code: int = 1


class ConfigError(AppealError):
    exit_code = 1


class DataValidationError(AppealError):
    """Input data failed validation.

    ``line`` is the 1-based line number in the source file when the error
    comes from a tabular input; ``raw_text`` keeps the offending text for audit.
    """

    exit_code = 2

    def __init__(
        self,
        message: str,
        *,
        line: Optional[int] = None,
        raw_text: Optional[str] = None,
    ) -> None:
        self.line = line
        self.raw_text = raw_text
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParseError(DataValidationError):
    pass


class CountMismatch(DataValidationError):
    pass


class RangeError(DataValidationError):
    pass


class DuplicateError(DataValidationError):
    pass


class UnknownPointError(DataValidationError):
    pass


class UnknownRaterError(DataValidationError):
    pass


class ImageryError(DataValidationError):
    pass


class StatisticsError(DataValidationError):
    pass


class ManifestMismatch(DataValidationError):
    pass


class BackendError(AppealError):
    exit_code = 3


class AuthenticationError(BackendError):
    pass


class BackendExhausted(BackendError):
    def __init__(
        self, message: str, *, attempts: int, raw_text: Optional[str] = None
    ) -> None:
        self.attempts = attempts
        self.raw_text = raw_text
        super().__init__(message)
