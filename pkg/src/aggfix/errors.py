"""Exception types shared across the package."""


class AggfixError(Exception):
    """Base class for every error raised by aggfix."""


class ParseError(AggfixError):
    """Rejected input text; carries a 1-based source position when known."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class NonIntegerElement(AggfixError):
    """A numeric aggregate collected a symbolic constant."""

    def __init__(self, atom):
        super().__init__(f"non-integer value collected from {atom}")
        self.atom = atom


class LimitExceeded(AggfixError):
    """A configured search budget would be exceeded."""


class SemanticsViolation(AggfixError):
    """Cross-semantics relations that should hold by construction failed.

    Raised by the comparison driver; seeing this means an engine bug,
    not a property of the input program.
    """
