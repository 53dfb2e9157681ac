"""Exception types shared across the package."""


class DistnumError(Exception):
    """Base class for errors raised by this package."""


class PreconditionError(DistnumError, ValueError):
    """An input violates the documented precondition of an operation."""


class BudgetExceeded(DistnumError):
    """A search hit its node limit before reaching an answer."""

    def __init__(self, limit: int, what: str = "search"):
        super().__init__(f"{what} exceeded the node budget of {limit}")
        self.limit = limit


class Inconclusive(DistnumError):
    """min* could not certify that its predicate never holds."""


class VerificationFailure(DistnumError):
    """A checked mathematical consequence did not hold, which signals an implementation bug."""
