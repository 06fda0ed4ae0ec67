"""Exception types. Each carries an optional ``witness`` with the offending data."""


class DisthomError(Exception):
    """Base class for all library errors."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def report(self):
        return {"error": type(self).__name__, "message": str(self), "witness": self.witness}


class InputError(DisthomError, ValueError):
    """Malformed input (bad table, bad file, bad parameters)."""


class CarrierMismatch(InputError):
    pass


class NotInvertible(DisthomError):
    pass


class NotIdempotentEndomap(InputError):
    pass


class NotEndomorphism(InputError):
    pass


class IdempotencyRequired(InputError):
    pass


class NotALattice(InputError):
    pass


class NotDistributive(InputError):
    pass


class SizeExceeded(DisthomError):
    pass


class BudgetExceeded(DisthomError):
    def __init__(self, message, witness=None, partial=None):
        super().__init__(message, witness)
        self.partial = partial


class WeakDistributivityViolated(DisthomError):
    pass


class NotAssociative(DisthomError):
    pass


class NotASubcomplex(DisthomError):
    pass


class NotASpindle(DisthomError):
    pass


class HypothesisViolated(InputError):
    pass


class NotAnOrbit(DisthomError):
    pass


class MalformedPD(InputError):
    pass


class NonPlanar(InputError):
    pass


class InvalidColoring(DisthomError):
    pass


class InvalidShadowColoring(DisthomError):
    pass


class NotACycle(DisthomError):
    pass


class InvalidSite(DisthomError):
    pass
