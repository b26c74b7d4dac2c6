"""Exception types raised across the package."""


class TubalError(Exception):
    """Base class for all package errors."""


class DimensionError(TubalError, ValueError):
    """Operands have incompatible n or p."""


class DomainError(TubalError, ValueError):
    """An input lies outside the domain an operation is defined on."""


class CapacityError(TubalError, ValueError):
    """Problem size is too large for an exhaustive method."""


class VerificationError(TubalError):
    """A certificate or claimed structure did not survive reconstruction."""


class SolverError(TubalError, RuntimeError):
    """The eigensolver failed to converge.

    ``partial`` holds the eigenvalues that had deflated before the failure.
    """

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)


class ParseError(TubalError, ValueError):
    """A tensor/vector file is malformed."""


class GenerationError(TubalError, RuntimeError):
    """Random instance generation could not satisfy the requested constraint."""
