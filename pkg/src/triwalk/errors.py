"""Exception types shared across the package."""


class WalkError(Exception):
    """Base class for all errors raised by this package."""


class SpinorFormatError(WalkError, ValueError):
    """A spinor literal could not be parsed."""


class DomainError(WalkError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class DegeneracyError(DomainError):
    """Eigenprojectors are requested at a degenerate wavenumber."""


class ResourceLimitError(WalkError, RuntimeError):
    """A requested computation exceeds a configured cap."""


class EnvelopeFitError(WalkError, RuntimeError):
    """An envelope fit does not have enough local maxima to be meaningful."""
