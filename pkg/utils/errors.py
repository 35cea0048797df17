"""Exception types raised by the two-ray toolkit."""


class TwoRayError(Exception):
    """Base class for every error raised by this package."""


class NonHermitian(TwoRayError, ValueError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class DegenerateInput(TwoRayError, ValueError):
    """Empty (0 x 0) or otherwise unusable input."""


class SignViolation(TwoRayError, ValueError):
    """An eigenvalue contradicts the declared sign of an operator."""


class PropagatorOverflow(TwoRayError, OverflowError):
    """An exponent of the propagator exceeds the configured cap."""


class DimensionMismatch(TwoRayError, ValueError):
    """Operands live in spaces of different dimension."""


class InvalidInterval(TwoRayError, ValueError):
    """The ray endpoints do not satisfy a < b."""


class BadGrid(TwoRayError, ValueError):
    """Grid parameters or samples are invalid."""


class GridMismatch(TwoRayError, ValueError):
    """Two ray functions are not sampled on the same grid."""


class GridTooCoarse(TwoRayError, ValueError):
    """Not enough grid points for the requested stencil or quadrature."""


class TruncationUnsound(TwoRayError, ValueError):
    """A function does not decay at the far end of its truncated ray."""


class OnAxis(TwoRayError, ValueError):
    """Spectral parameter lies on the imaginary axis."""


class NotInKernel(TwoRayError, ValueError):
    """Vector is not a unit vector of the admissible subspace."""


class ConfigInvalid(TwoRayError, ValueError):
    """Scenario document is malformed."""
