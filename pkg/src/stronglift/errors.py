"""Exception types.

Every precondition failure raises a subclass of :class:`LiftError`; the
``code`` attribute is the machine-readable name used in CLI error JSON.
"""


class LiftError(ValueError):
    code = "LiftError"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


class PreconditionViolated(LiftError):
    code = "PreconditionViolated"


class NonCoprimeModuli(LiftError):
    code = "NonCoprimeModuli"


class OutOfRange(LiftError):
    code = "OutOfRange"


class FactorizationBudgetExceeded(LiftError):
    code = "FactorizationBudgetExceeded"


class NotAUnit(LiftError):
    code = "NotAUnit"


class NotSquare(LiftError):
    code = "NotSquare"


class DimensionMismatch(LiftError):
    code = "DimensionMismatch"


class NotUnimodular(LiftError):
    code = "NotUnimodular"


class NotSymmetric(LiftError):
    code = "NotSymmetric"


class ShapeMismatch(LiftError):
    code = "ShapeMismatch"


class BudgetExceeded(LiftError):
    code = "BudgetExceeded"


class BadFactorization(LiftError):
    code = "BadFactorization"


class NotSLModN(LiftError):
    code = "NotSLModN"


class NoUnitEntry(LiftError):
    code = "NoUnitEntry"


class BadLength(LiftError):
    code = "BadLength"


class NotSymplecticModN(LiftError):
    code = "NotSymplecticModN"


class RowNotUnital(LiftError):
    code = "RowNotUnital"


class BadShape(LiftError):
    code = "BadShape"


class NotPrimeModulus(LiftError):
    code = "NotPrimeModulus"


class InvalidInput(LiftError):
    """Malformed JSON or arguments reaching the library boundary."""

    code = "InvalidInput"


class InternalCheckFailed(RuntimeError):
    """A construction produced a value that fails its own postcondition.

    Never expected; raised instead of emitting a certificate with a failing
    check.
    """
