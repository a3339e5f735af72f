"""Exception hierarchy shared across the package."""


class BetaGraphError(Exception):
    """Base class for all errors raised by betagraph."""


class DomainError(BetaGraphError, ValueError):
    """An argument lies outside the domain of a function."""


class DegenerateStatsError(DomainError):
    """The sufficient statistics sit on the boundary where no ML estimate exists.

    Happens when the scaled statistic ``M`` equals ``ln 2``, i.e. the bound
    ``sum(R) + sum(C) <= -2 ln 2 n (n-1)`` is attained (every weight is 1/2).
    """


class ValidationError(BetaGraphError, ValueError):
    """Input data violates an invariant.

    ``index`` holds the offending (row, column) pair, 1-based, when known.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class IngestError(ValidationError):
    """A matrix file could not be parsed."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class ConvergenceError(BetaGraphError, RuntimeError):
    """The fixed-point iteration stopped before meeting its tolerances.

    The partial :class:`~betagraph.estimator.EstimationReport` is attached as
    ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DivergenceError(ConvergenceError):
    """An iterate exceeded the parameter cap; the statistics are corrupt."""


class NumericalError(BetaGraphError, ArithmeticError):
    """An internal root finder failed on valid input (an implementation bug)."""
