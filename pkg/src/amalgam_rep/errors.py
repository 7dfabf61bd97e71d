"""Exception types raised across the package."""


class AmalgamError(Exception):
    """Base class for all package errors."""


class OrderExceedsCap(AmalgamError):
    def __init__(self, cap: int):
        super().__init__(f"no power m**n == I with 1 <= n <= {cap}")
        self.cap = cap


class NonUnitConstantTerm(AmalgamError):
    pass


class NotAResidue(AmalgamError):
    pass


class FieldDivisionByZero(AmalgamError, ZeroDivisionError):
    pass


class NotOddPrime(AmalgamError, ValueError):
    pass


class UnsupportedPrime(NotOddPrime):
    pass


class WrongContextKind(AmalgamError):
    pass


class ClosureExceedsCap(AmalgamError):
    def __init__(self, cap: int):
        super().__init__(f"closure grew past cap={cap}")
        self.cap = cap


class OrbitNotInvariant(AmalgamError):
    pass


class Inconclusive(AmalgamError):
    """Randomized order computation stalled and could not be completed."""

    def __init__(self, order: int, reason: str):
        super().__init__(f"order computation inconclusive at {order}: {reason}")
        self.order = order
        self.reason = reason


class MemoryBudgetExceeded(AmalgamError):
    pass
