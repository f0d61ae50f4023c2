"""Domain errors shared across the library.

Every computational failure mode gets its own class so the CLI can map
the whole taxonomy onto one exit code without string matching.
"""


class DomainError(Exception):
    """Base class for all value-level errors raised by library operations."""


class NotSubtractable(DomainError):
    """Left subtraction a + x = b has no solution (a > b), or no digitwise
    difference of two fractions exists in any spelling."""


class NotDivisible(DomainError):
    """A dyadic exponent lacks the natural-sum decomposition required to
    multiply by the requested power of two."""


class UndefinedSum(DomainError):
    """Digitwise addition needs a carry that no position can absorb."""


class OutOfUniverse(DomainError):
    """An index or run endpoint lies outside the fixed sequence length."""


class UniverseMismatch(DomainError):
    """Two fractions from different universes met in one operation."""


class LengthMismatch(DomainError):
    """Componentwise skand operation applied to skands of different lengths."""


class NotSelfSimilar(DomainError):
    """Singleton construction requires a self-similar skand of infinite length."""


class NotNested(DomainError):
    """An interval in a shrinking chain escapes its predecessor."""


class EvalTypeError(DomainError):
    """An expression applied an operation to values of the wrong kind."""
