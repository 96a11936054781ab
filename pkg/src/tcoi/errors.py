"""Exception hierarchy shared by every module."""


class TcoiError(Exception):
    """Base class for all package errors."""


class InvalidInputError(TcoiError, ValueError):
    """A vertex id, edge or parameter is outside its allowed range."""


class ParseError(TcoiError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IsolatedVertexError(TcoiError, ValueError):
    """Total domination is undefined on graphs with an isolated vertex."""


class InfeasibleError(TcoiError):
    """No set satisfies the requested constraints."""


class NotATreeError(TcoiError, ValueError):
    pass


class PreconditionError(TcoiError, ValueError):
    """An operation was applied where its precondition does not hold."""
