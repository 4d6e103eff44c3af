"""Exception and warning types shared across the package."""


class GuardExceeded(ValueError):
    """Argument of exp(-x/4) too large for the selected evaluation path."""


class DimensionMismatch(ValueError):
    """Operands were built on incompatible grids or lengths."""


class EmptySpectrumError(ValueError):
    """A coefficient sequence of length zero was supplied."""


class MemoryGuardError(MemoryError):
    """Requested transform matrix exceeds the configured entry budget."""


class ResolutionWarning(UserWarning):
    """Quadrature step too coarse to resolve basis oscillations."""
