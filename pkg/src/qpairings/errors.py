"""Exception types shared across the package."""


class QPairingsError(Exception):
    """Base class for every error raised by this package."""


class CapExceeded(QPairingsError):
    """An enumeration or size cap was exceeded."""


class KernelDomain(QPairingsError):
    """A kernel cannot produce a value for a required lag."""


class KernelNotPSD(QPairingsError):
    """The kernel's Toeplitz matrix is not positive semi-definite."""


class InvalidWeight(QPairingsError):
    """Weight parameter outside the accepted range."""


class InvalidConfig(QPairingsError):
    """A simulation configuration field is out of range."""


class DimensionMismatch(QPairingsError):
    """Matrix family members do not share one square shape."""


class InsufficientGrid(QPairingsError):
    """A probe needs more grid points than were supplied."""


class NoSignChange(QPairingsError):
    """Bisection endpoints do not bracket a sign change."""


class DegreeBoundTooSmall(QPairingsError):
    """Coefficient reversal requested below the actual degree."""


class ZeroDenominator(QPairingsError):
    """Exact evaluation requested at a rational with denominator zero."""
