"""Exception hierarchy shared across the package.

The three concrete classes map onto the CLI exit codes: validation
failures exit 1, capacity guards exit 2, internal invariant breaches
exit 3.
"""


class SimpartError(Exception):
    """Base class for all package errors."""


class ValidationError(SimpartError):
    """Input data violates a documented precondition or format."""


class CapacityError(SimpartError):
    """A size guard would be exceeded (dense storage, enumeration)."""


class InternalInvariantError(SimpartError):
    """A state the algorithms promise to maintain was broken."""
