"""Exception hierarchy shared by every module."""


class YBError(Exception):
    """Base class for all library errors."""


class StructureError(YBError, ValueError):
    """Malformed input: wrong table shape, out-of-range entry, size mismatch."""


class DomainError(YBError, ValueError):
    """Well-formed input that violates an operation's mathematical precondition.

    ``witness`` carries whatever pinpoints the failure (an element, a pair,
    a triple, a condition name), or ``None``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ResourceError(YBError, RuntimeError):
    """A size cap was exceeded, or required input data is missing."""
