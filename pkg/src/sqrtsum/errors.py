"""Exception hierarchy. Each class carries the CLI exit status it maps to."""


class SqrtSumError(Exception):
    exit_code = 1


class FormatError(SqrtSumError):
    """Malformed input text: bad header, wrong arity, unparsable or out-of-range token."""

    exit_code = 2

    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = []
        if source is not None:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"token {column}")
        if where:
            message = f"{':'.join(where)}: {message}"
        super().__init__(message)


class DomainError(SqrtSumError, ValueError):
    exit_code = 3


class ResourceLimitError(SqrtSumError):
    exit_code = 4


class InternalError(SqrtSumError):
    """An invariant that the mathematics guarantees did not hold."""

    exit_code = 1
