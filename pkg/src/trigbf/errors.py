"""Exception types shared across the package."""


class TrigbfError(ValueError):
    """Base class for all errors raised by this package."""


class DimensionError(TrigbfError):
    """Image dimensions, channel counts, or buffer lengths disagree."""


class ParameterError(TrigbfError):
    """A filter or kernel parameter is outside its valid range."""


class PnmParseError(TrigbfError):
    """Malformed PNM data.

    The byte offset at which parsing failed is kept in ``offset``.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset
