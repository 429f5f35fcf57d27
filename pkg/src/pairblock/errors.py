"""Exception types shared across the package."""


class PairblockError(Exception):
    """Base class for all library errors."""


class ZeroVectorError(PairblockError):
    """A direction was the zero vector."""


class NotPrimitiveError(PairblockError):
    """A direction's coordinates have a common divisor greater than 1."""


class InfeasibleError(PairblockError):
    """A constructive search exhausted its space without a solution."""


class InternalInvariantViolation(PairblockError):
    """A condition the construction guarantees was found violated (a bug)."""


class MalformedInstance(PairblockError):
    """An externally supplied problem instance fails its structural invariants."""


class InvalidVector(PairblockError):
    """A vector argument is unusable (e.g. zero where nonzero is required)."""
