"""Exception types shared across the package."""


class HararyError(Exception):
    """Base class for all package errors."""


class CapacityError(HararyError):
    """An input exceeds a configured size limit."""

    def __init__(self, message: str, limit: str | None = None):
        super().__init__(message)
        self.limit = limit


class GraphFormatError(HararyError, ValueError):
    """Malformed graph6 text or named-graph syntax."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


class PropertySyntaxError(HararyError, ValueError):
    """Malformed property expression."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
