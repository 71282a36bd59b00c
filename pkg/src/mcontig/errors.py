"""Exception types shared across the package."""


class MalformedInputError(ValueError):
    """Input that violates a precondition: bad simplex, mismatched maps, unknown name."""


class ParseError(MalformedInputError):
    """Syntax or reference error in a text file, with the offending line number."""

    def __init__(self, message, lineno=None, source=None):
        self.lineno = lineno
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)


class BudgetExceeded(RuntimeError):
    """A search ran out of its map budget before finishing.

    ``partial`` holds how much work was done (maps visited or enumerated).
    """

    def __init__(self, message, partial=0):
        self.partial = partial
        super().__init__(message)
