"""Exception hierarchy shared by every stage.

The CLI maps each class to a distinct exit status, so library code raises the
most specific class that applies.
"""


class GenlinkError(Exception):
    """Base class for all library errors."""

    exit_code = 5


class DomainError(GenlinkError, ValueError):
    """An operation was called outside its mathematical domain."""

    exit_code = 2


class RegistryMismatchError(GenlinkError, ValueError):
    """Operands live over different variable registries."""


class ContractError(GenlinkError):
    """A documented precondition flag was not set."""


class HypothesisError(GenlinkError):
    """A hypothesis of a construction fails; ``obstruction`` carries evidence."""

    exit_code = 2

    def __init__(self, message, stage=None, obstruction=None):
        super().__init__(message)
        self.stage = stage
        self.obstruction = obstruction


class ResourceLimitError(GenlinkError):
    """A configured pair or degree bound was exceeded."""

    exit_code = 3

    def __init__(self, message, pairs=0, degree=None):
        super().__init__(message)
        self.pairs = pairs
        self.degree = degree


class ParseError(GenlinkError, ValueError):
    exit_code = 4

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class InvariantViolation(GenlinkError):
    """An internal self-check failed; this always indicates a bug."""

    exit_code = 5
