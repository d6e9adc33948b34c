"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SuperEngelError(Exception):
    """Base class for all library errors."""


# arithmetic

class FieldMismatch(SuperEngelError, TypeError):
    pass


class DivisionByZero(SuperEngelError, ZeroDivisionError):
    pass


class ShapeMismatch(SuperEngelError, ValueError):
    pass


class RingMismatch(SuperEngelError, TypeError):
    pass


# structure

class AlgebraMismatch(SuperEngelError, ValueError):
    pass


class ValidationError(SuperEngelError, ValueError):
    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues) or "invalid algebra")


class NotHomogeneous(SuperEngelError, ValueError):
    pass


class NotGraded(SuperEngelError, ValueError):
    def __init__(self, message, vector=None):
        super().__init__(message)
        self.vector = vector


class NotASubalgebra(SuperEngelError, ValueError):
    pass


class BudgetExceeded(SuperEngelError, RuntimeError):
    pass


class SymbolicInconclusive(SuperEngelError, RuntimeError):
    pass


class CharTwoUnsupported(SuperEngelError, ValueError):
    pass


class NotAssociative(SuperEngelError, ValueError):
    pass


class NotPlusClosed(SuperEngelError, ValueError):
    pass


class UnsupportedMode(SuperEngelError, ValueError):
    pass


class HypothesisViolated(SuperEngelError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionFailed(SuperEngelError, ValueError):
    """Raised by the Q-ideal check; ``reason`` names the failed precondition."""

    def __init__(self, reason, message, witness=None):
        super().__init__(f"{reason}: {message}")
        self.reason = reason
        self.witness = witness


class InconsistencyError(SuperEngelError, AssertionError):
    """A verified hypothesis led to a conclusion that does not hold."""


# front end

class ParseError(SuperEngelError, ValueError):
    pass


class UnknownName(SuperEngelError, KeyError):
    def __str__(self):
        return f"unknown name {self.args[0]!r}" if self.args else "unknown name"


class BadParams(SuperEngelError, ValueError):
    pass
