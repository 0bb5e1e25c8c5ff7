"""Exception types shared across the package."""


class QphiError(Exception):
    """Base class for errors raised by qphi."""


class PoleError(QphiError, ZeroDivisionError):
    """A parameter combination sits on a pole of the expression.

    ``factor`` is a human-readable description of the vanishing factor,
    e.g. ``"(1 - c*q^3)"``.
    """

    def __init__(self, factor: str, message: str | None = None):
        self.factor = factor
        super().__init__(message or f"pole: vanishing factor {factor}")


class NonTerminatingError(QphiError):
    """An exact-mode evaluation was requested for a non-terminating series."""


class ConvergenceError(QphiError):
    """A float-mode evaluation failed to reach the tail tolerance in max_terms."""


class PrecisionMismatchError(QphiError):
    """Float operands with different precisions were mixed in one computation."""


class OrderMismatchError(QphiError):
    """Truncated series with different truncation orders were combined."""
