"""Exception types.

Everything that reports a resource or width limit derives from
:class:`CapacityError`; the CLI maps that family to exit status 3.
"""


class CapacityError(Exception):
    """A computation hit a configured or representational limit."""


class EnergyOverflow(CapacityError, OverflowError):
    """An exact result or intermediate does not fit the 128-bit budget."""


class RangeExceeded(CapacityError, IndexError):
    """An argument lies beyond the bound of a precomputed table."""


class CapExceeded(CapacityError, MemoryError):
    """A requested table is larger than the memory cap allows."""


class NotPrime(ValueError):
    """Raised when an argument required to be prime is composite."""
