from __future__ import annotations

"""Exception hierarchy shared by every module.

The CLI maps the two top-level branches onto exit codes: :class:`DataError`
and its subclasses become exit 3, :class:`UsageError` becomes exit 2.  I/O
failures are left as :class:`OSError` and become exit 4.
"""


class LongtailError(Exception):
    """Base class for all toolkit errors."""


class UsageError(LongtailError):
    """A flag or option value is invalid."""


class DataError(LongtailError):
    """Input data is malformed, inconsistent, or outside an operation's domain."""


class ParseError(DataError):
    """The annotation document is not well-formed JSON."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class SchemaError(DataError):
    """A required COCO field is missing or has the wrong type."""

    def __init__(self, field: str, message: str | None = None) -> None:
        super().__init__(message or f"Missing or invalid required field '{field}'.")
        self.field = field


class IntegrityError(DataError):
    """An annotation references an image or category that does not exist."""

    def __init__(self, annotation_id: int, message: str) -> None:
        super().__init__(f"Annotation {annotation_id}: {message}")
        self.annotation_id = annotation_id


class DomainError(DataError):
    """An operation's precondition does not hold for the given input."""
