"""Exception hierarchy shared by all modules."""


class ChebError(Exception):
    """Base class for every error raised by this package."""


class InvalidSeriesError(ChebError, ValueError):
    pass


class KindMismatchError(ChebError, ValueError):
    pass


class ChebDomainError(ChebError, ValueError):
    """An argument lies outside the domain of the operation."""


class RegistryError(ChebError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class NoOracleError(ChebError, LookupError):
    pass


class SamplingConditionError(ChebError, ValueError):
    """The node count is too small for the requested coefficient index."""


class AnalyticityError(ChebError, ValueError):
    """The contour reaches or crosses a singularity of the function."""


class EvaluationError(ChebError, ArithmeticError):
    """A function sample on the contour was not finite."""


class ConvergenceError(ChebError, ArithmeticError):
    pass


class ExprError(ChebError, ValueError):
    """Syntax or evaluation problem in a user expression.

    ``offset`` is the byte offset into the source where the problem was
    detected, or ``None`` for evaluation-time errors.
    """

    def __init__(self, message, offset=None, subexpr=None):
        super().__init__(message)
        self.offset = offset
        self.subexpr = subexpr

    def __str__(self):
        msg = self.args[0]
        if self.offset is not None:
            msg = f"{msg} (at byte {self.offset})"
        if self.subexpr is not None:
            msg = f"{msg} in '{self.subexpr}'"
        return msg


class ExprSyntaxError(ExprError):
    pass


class ExprDomainError(ExprError, ChebDomainError):
    pass
