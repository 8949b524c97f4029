"""Exception types shared across the package."""


class CapacityError(Exception):
    """A requested structure exceeds the configured resource limits."""


class CoverageError(Exception):
    """A query lies outside the range covered by a sieve or table."""


class DomainError(ValueError):
    """An argument violates a documented precondition."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree.

    Raised only for conditions that are mathematically impossible, so an
    occurrence always signals an implementation bug.
    """


class PrecisionError(RuntimeError):
    """A comparison stayed indeterminate at the maximum working precision."""
