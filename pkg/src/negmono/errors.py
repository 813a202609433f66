"""Exception types raised by the library."""


class NegmonoError(Exception):
    """Base class for all library errors."""


class NotNormalized(NegmonoError):
    """State amplitudes or family parameters do not have unit norm."""


class NotNormalizable(NegmonoError):
    """Requested parameters cannot be completed to a normalized state."""


class DimensionMismatch(NegmonoError):
    """Matrix or state dimensions are inconsistent with the declared factors."""


class NotHermitian(NegmonoError):
    """Matrix fails the Hermiticity check."""


class NotDensityMatrix(NegmonoError):
    """Matrix is not Hermitian, unit trace and positive semidefinite."""


class UnknownName(NegmonoError):
    """Unrecognized named state."""


class Unreachable(NegmonoError):
    """Requested slice lies outside the reachable range."""


class RegionCheckFailed(NegmonoError):
    """A region-filling verification (endpoints, nesting, determinant signs) failed."""
