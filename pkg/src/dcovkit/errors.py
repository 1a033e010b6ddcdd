"""Exception hierarchy shared by every dcovkit module."""


class DcovError(Exception):
    """Base class for dcovkit errors."""


class InvalidInputError(DcovError, ValueError):
    """Input data is malformed (non-finite entries, wrong rank, ...)."""


class SizeError(DcovError, ValueError):
    """Sample sizes are too small or do not match."""


class ParameterError(DcovError, ValueError):
    """A scalar parameter is outside its allowed range."""


class DegenerateVarianceError(DcovError, ArithmeticError):
    """A correlation was requested for a variable with zero variance."""


class ConsistencyError(DcovError, ArithmeticError):
    """A quantity that must be nonnegative came out clearly negative."""


class ParseError(DcovError, ValueError):
    """A table file could not be parsed."""

    def __init__(self, message, path=None, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column!r}")
        super().__init__(f"{': '.join([', '.join(where), message]) if where else message}")
