"""Exception hierarchy shared by all modules."""


class RpqError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class GraphFormatError(RpqError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownNodeError(RpqError, KeyError):
    def __str__(self) -> str:
        return f"unknown node {self.args[0]!r}"


class UpdateError(RpqError):
    pass


class AlphabetError(RpqError):
    pass


class QuerySyntaxError(RpqError):
    def __init__(self, message: str, position: int) -> None:
        self.position = position
        super().__init__(f"{message} at position {position}")


class StaleStateError(RpqError):
    """Raised by an enumerator whose database was updated after it was created."""


class UnsupportedQueryClass(RpqError):
    pass
