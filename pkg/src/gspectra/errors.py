"""Exception types shared across the package."""


class GSpectraError(Exception):
    """Base class for package errors."""


class InvalidParameterError(GSpectraError, ValueError):
    """A caller supplied an argument outside the documented domain."""


class IncompleteInputError(GSpectraError, ValueError):
    """A coefficient set is missing entries required by the operation."""


class ConsistencyError(GSpectraError, RuntimeError):
    """An internal numerical consistency check failed."""


class UnsupportedError(GSpectraError, ValueError):
    """The input is valid but outside the supported scope (e.g. tensor
    multiplicities above one)."""


class IncompletenessError(GSpectraError, RuntimeError):
    """Pair selection stalled before covering every irrep."""

    def __init__(self, message, uncovered=()):
        super().__init__(message)
        self.uncovered = tuple(uncovered)


class NonGenericSignalError(GSpectraError, RuntimeError):
    """A Fourier coefficient required by an inversion chain is zero or
    numerically singular."""


class InconsistentInputError(GSpectraError, RuntimeError):
    """Coefficients passed to inversion cannot come from any real signal."""


class InversionFailureError(GSpectraError, RuntimeError):
    """No admissible phase/unitary produced a real signal within tolerance."""
