"""Exception hierarchy shared by every module."""


class ReactsysError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(ReactsysError, ValueError):
    """Bad arguments: index out of range, width mismatch, mismatched backgrounds."""


class ClassMismatchError(UsageError):
    """A system is outside the resource class an operation requires."""


class PreconditionError(UsageError):
    """An operation's documented precondition does not hold."""


class EmptyProductError(ReactsysError, ValueError):
    """A reaction was declared with an empty product set."""


class FormulaError(UsageError):
    """A formula has the wrong kind or shape for the requested construction."""


class ParseError(ReactsysError, ValueError):
    """Malformed text input; carries a 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class CapabilityError(ReactsysError):
    """The instance exceeds a configured size cap."""


class RecheckError(ReactsysError, RuntimeError):
    """A decoded witness failed direct re-evaluation."""


class SolverError(ReactsysError, RuntimeError):
    """An external solver failed or produced unparsable output."""

    def __init__(self, message, output=""):
        self.output = output
        super().__init__(message if not output else f"{message}\n--- solver output ---\n{output}")
