"""Exception hierarchy shared across the package.

The CLI and the HTTP service map these onto exit codes / status codes:
``ValidationError`` means the input design violates an invariant (exit 2,
HTTP 422), everything else under ``NumericalError`` means the computation
itself failed (exit 3, HTTP 500).
"""


class ArmourLossError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ArmourLossError):
    """A design parameter or configuration violates an invariant."""


class NumericalError(ArmourLossError):
    """A numerical procedure failed (singular system, non-convergence, ...)."""


class DomainError(NumericalError):
    """A function argument lies outside the supported domain."""
