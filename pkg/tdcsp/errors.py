"""Exception types shared across tdcsp."""

from typing import Optional


class TdcspError(Exception):
    """Base class for every error raised by tdcsp."""


class InputError(TdcspError, ValueError):
    """An input violates a documented precondition (bad witness, wrong shape, ...)."""


class FormatError(InputError):
    """A text artifact failed to parse.

    Args:
        message: Human readable description
        line: 1-based line number of the offending line, if known
        source: File name or other origin label, if known
    """

    def __init__(
        self, message: str, line: Optional[int] = None, source: Optional[str] = None
    ):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class ResourceCapError(TdcspError, RuntimeError):
    """An exact procedure would exceed one of the configured caps."""

    def __init__(self, cap: str, limit: int, requested: Optional[int] = None):
        self.cap = cap
        self.limit = limit
        self.requested = requested
        detail = f" (requested {requested})" if requested is not None else ""
        super().__init__(f"Resource cap '{cap}' = {limit} exceeded{detail}")
