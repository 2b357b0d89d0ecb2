"""Exception hierarchy used throughout the package."""


class RlctError(Exception):
    """Base class for all errors raised by rlct."""


class DivisionByZero(RlctError, ZeroDivisionError):
    pass


class ModulusMismatch(RlctError, ValueError):
    pass


class ArityMismatch(RlctError, ValueError):
    pass


class RelationViolation(RlctError, ValueError):
    """A substitution image does not respect x_i^p = 0."""


class DegreeError(RlctError, ValueError):
    pass


class ParityError(RlctError, ValueError):
    pass


class ContactNormalizationError(RlctError):
    pass


class VerificationFailure(RlctError):
    """An exhaustive self-check failed; carries the offending data."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ClosureError(RlctError):
    pass


class InvalidForm(RlctError, ValueError):
    pass


class NotSemisimple(RlctError):
    pass


class NotInvertible(RlctError, ValueError):
    pass


class OutsideOmegaBeta(RlctError):
    pass


class EnvelopeError(RlctError, ValueError):
    pass


class SmallPrimeWarning(UserWarning):
    """A construction is used at p = 3 where the theory assumes p >= 5."""
