"""Exception types raised by nekbounds."""


class NekboundsError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(NekboundsError, ValueError):
    """Malformed matrix text. ``line`` and ``column`` are 1-based."""

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


class ZeroDiagonal(NekboundsError, ZeroDivisionError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"diagonal entry {index} is zero")


class NotSDD(NekboundsError):
    pass


class NotNekrasov(NekboundsError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class MuOutOfRange(NekboundsError, ValueError):
    def __init__(self, mu, threshold):
        self.mu = mu
        self.threshold = threshold
        super().__init__(f"mu={mu!r} must exceed r_1/|a_11| = {threshold!r}")


class DimensionTooSmall(NekboundsError, ValueError):
    pass


class EmptyGrid(NekboundsError, ValueError):
    pass


class Singular(NekboundsError, ArithmeticError):
    def __init__(self, column):
        self.column = column
        super().__init__(f"matrix is singular: zero pivot column {column}")


class NearSingularWarning(RuntimeWarning):
    """Pivot growth during elimination exceeded the reporting threshold."""
