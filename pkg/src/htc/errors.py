"""Exception types shared across the package."""


class HtcError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(HtcError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = "%d:%d: %s" % (line, col, message)
        super().__init__(message)


class DeclarationError(HtcError):
    """A variable is used that is not declared, or declarations mismatch."""


class NestingError(HtcError):
    """A construct is nested where the syntax forbids it."""


class ArithmeticOverflowError(HtcError):
    """A checked 64-bit integer operation overflowed.

    Deliberately distinct from the undefined value: overflow is a hard
    error, never a truth value.
    """


class EnumerationCapError(HtcError):
    """The candidate-valuation space exceeds the configured cap."""


class PreconditionError(HtcError):
    """An operation was called on arguments violating its contract."""


class UnsupportedOperationError(HtcError):
    """The requested transformation does not apply to this construct."""
