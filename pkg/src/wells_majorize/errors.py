"""Exception hierarchy shared by all verifier modules."""


class VerificationError(Exception):
    """Base class for everything raised by this package."""


class ValidationError(VerificationError, ValueError):
    """Malformed input data (bad measure, bad vector, bad grid)."""


class PreconditionError(ValidationError):
    """A stated hypothesis of the operation does not hold for the inputs."""


class LengthMismatchError(PreconditionError):
    """Vectors of different lengths were compared."""


class DomainError(ValidationError):
    """A function was evaluated outside its domain."""


class InvariantError(VerificationError):
    """An internal invariant that should be impossible to break was broken."""


class ResourceLimitError(VerificationError):
    """An enumeration would exceed the configured cap."""


class NumericError(VerificationError):
    """Floating-point breakdown (e.g. vanishing partition function)."""
