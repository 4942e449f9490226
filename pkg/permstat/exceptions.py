"""
Exception hierarchy for permstat.

Library code raises these; the CLI and the HTTP layer translate them into
exit codes and status codes respectively.
"""


class PermstatError(ValueError):
    """Base class for every domain error raised by the library."""


class NotAPermutationError(PermstatError):
    """A window is not a rearrangement of 1..m."""


class DegreeMismatchError(PermstatError):
    """Two permutations of different degree were combined."""


class InvalidParameterError(PermstatError):
    """A numeric parameter (q, level, generator index, set) is out of range."""


class WordParseError(PermstatError):
    """A canonical word string is malformed."""


class ParityError(PermstatError):
    """An odd permutation was given to an alternating-group operation."""


class UnknownStatisticError(PermstatError):
    """A statistic id is not registered."""


class UnknownTheoremError(PermstatError):
    """A verification id is not registered."""


class BudgetExceededError(PermstatError):
    """An exhaustive sweep would exceed the configured enumeration budget."""


class InvariantViolation(PermstatError):
    """An internal cross-check failed."""
