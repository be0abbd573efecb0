"""Shared exception types."""


class QheckeError(Exception):
    """Base class for all errors raised by this package."""


class TruncationError(QheckeError):
    """An operation needs coefficients beyond the known truncation bound."""


class GradingError(QheckeError):
    """Exponents do not fit the declared fractional grading."""


class NormalizationError(QheckeError):
    """A series does not have the leading/constant-term shape an operation requires."""


class ClosureError(QheckeError):
    """An indexed family is missing entries an operator needs."""


class CatalogError(QheckeError):
    """Unknown catalog label, bad file, or failed admission validation."""


class SeriesParseError(CatalogError):
    """Malformed series text file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
