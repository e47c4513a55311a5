"""Exception types shared across the package."""


class UDCPError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(UDCPError, ValueError):
    """Bad input: mismatched lengths, out-of-range parameters, malformed files."""


class NotVerifiedError(ValidationError):
    """An operation needs a pair that verifies as uniquely decodable, and it does not."""


class EmptyWindowError(ValidationError):
    """No split size falls in the admissible window at this word length."""


class LemmaViolation(UDCPError, AssertionError):
    """A proved inequality failed on concrete data. Always an implementation bug."""


class BudgetExhausted(UDCPError):
    """A search ran out of its node budget before proving optimality."""
