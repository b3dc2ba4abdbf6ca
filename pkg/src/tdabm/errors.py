"""Exception types shared across the package."""


class TdabmError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(TdabmError, ValueError):
    """Invalid input data or configuration (bad values, not I/O failures)."""
