"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CybokError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(CybokError):
    """Source document could not be parsed.

    Carries the best available location information: line/column when the
    XML parser reports one, plus the byte offset into the raw input.
    """

    def __init__(self, message: str, *, line: int | None = None,
                 column: int | None = None, offset: int | None = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if column is not None:
            location.append(f"column {column}")
        if offset is not None:
            location.append(f"byte offset {offset}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)
        self.line = line
        self.column = column
        self.offset = offset


class CorpusError(CybokError):
    """Invalid corpus content (bad identifier, empty snapshot, ...)."""


class FetchError(CybokError):
    """A source could not be acquired.

    ``retryable`` distinguishes transient network failures from corrupt
    downloads that will not fix themselves.
    """

    def __init__(self, message: str, *, database: str, retryable: bool):
        super().__init__(f"{database}: {message}")
        self.database = database
        self.retryable = retryable


class ValidationError(CybokError):
    """A system model violates a structural invariant."""


class StaleIndexError(CybokError):
    """Persisted index does not belong to the snapshot it is queried with."""


class PersistenceError(CybokError):
    """An on-disk store could not be written or read back."""
