"""Exception types raised by bindilog."""


class BinDilogError(Exception):
    """Base class for all library errors."""


class DomainError(BinDilogError, ValueError):
    """An argument lies outside the domain of the operation."""


class BranchCutError(DomainError):
    """The argument lies on the branch cut [1, inf) and no side was chosen."""


class NotInvertibleError(DomainError):
    """A binomial transform with beta == 0 was asked to invert."""


class InsufficientPrefixError(BinDilogError, ValueError):
    """A sequence prefix is too short for the requested operation."""


class UndefinedConditionError(BinDilogError, ArithmeticError):
    """Condition number of a sum whose value is exactly zero."""


class SingularRecurrenceError(BinDilogError, ZeroDivisionError):
    """The leading coefficient of a recurrence vanished at index ``n``."""

    def __init__(self, n):
        super().__init__(f"singular leading coefficient at n={n}")
        self.n = n


class AlgebraError(BinDilogError, RuntimeError):
    """Operator normal form reached an inconsistent state."""


class NotConvergedError(BinDilogError, ArithmeticError):
    """A series did not meet its stopping rule.

    ``partial`` carries whatever result was accumulated before giving up.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
