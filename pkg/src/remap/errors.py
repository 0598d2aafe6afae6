"""Exception hierarchy shared by all modules.

Every error carries a stable machine-readable ``code`` (the class name)
so the HTTP layer and the CLI can map failures without string matching.
"""


class RemapError(Exception):
    """Base class for all domain errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class IngestError(RemapError):
    """Base for errors raised while parsing input files."""

    def __init__(self, message: str, *, path=None, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        loc = []
        if path is not None:
            loc.append(str(path))
        if line is not None:
            loc.append(f"line {line}")
        if column is not None:
            loc.append(f"column {column}")
        if loc:
            message = f"{message} ({', '.join(loc)})"
        super().__init__(message)


class MalformedRow(IngestError):
    pass


class GapInCalendar(IngestError):
    pass


class OutOfRange(IngestError):
    pass


class DuplicateTimestamp(IngestError):
    pass


class NonMonotoneDates(IngestError):
    pass


class DuplicateDayForCountry(IngestError):
    pass


class VersionMismatch(RemapError):
    pass


class CorruptSnapshot(RemapError):
    pass


class MissingSolar(RemapError):
    pass


class EmptyFilter(RemapError):
    pass


class YearOutOfRange(RemapError):
    pass


class UnknownCountry(RemapError):
    pass


class UnknownIndex(RemapError):
    pass


class IndexYearMissing(RemapError):
    pass


class NoPriceData(RemapError):
    pass


class DegenerateInput(RemapError):
    pass


class LengthMismatch(RemapError):
    pass


class InsufficientSamples(RemapError):
    pass


class BadParam(RemapError):
    pass


class UnknownRoute(RemapError):
    pass
