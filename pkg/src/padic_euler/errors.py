"""Exception hierarchy shared by every module."""


class PadicError(Exception):
    """Base class for all library errors."""


class DomainError(PadicError, ValueError):
    pass


class PrecisionError(PadicError, ValueError):
    pass


class DivisionByZero(PadicError, ZeroDivisionError):
    pass


class NotInvertible(PadicError, ArithmeticError):
    """Raised when a series or scalar that must be a p-adic unit is not."""


class ConvergenceError(PadicError, ArithmeticError):
    """Partial sums failed to stabilize within the allowed truncation budget."""


class ParseError(PadicError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position
