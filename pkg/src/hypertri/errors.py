"""Exception types shared across the package."""


class HypertriError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(HypertriError):
    """Malformed edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyInputError(HypertriError):
    """Input contained no usable hyperedge after filtering."""


class ConsistencyError(HypertriError):
    """An exact internal identity was violated; this always means a bug."""


class CountOverflowError(HypertriError):
    """A census count left the unsigned 64-bit range."""


class SizeGuardError(HypertriError):
    """A brute-force oracle was asked to run beyond its hard size guard."""
