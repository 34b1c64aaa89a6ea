"""Exception types shared across the package."""


class DirSeriesError(Exception):
    """Base class for domain errors raised by this package."""


class SingularInputError(DirSeriesError):
    """An evaluation hit a pole (e.g. some factor 1 - p^{-s} vanished)."""


class NoRootError(DirSeriesError):
    """Bracket search exhausted its budget without trapping a sign change."""


class SeriesParseError(DirSeriesError):
    """A series-spec string failed to parse; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position
