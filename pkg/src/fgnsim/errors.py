"""Exception types shared across the simulator modules."""


class FgnsimError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(FgnsimError):
    """Operands have incompatible shapes."""


class IndexOutOfRange(FgnsimError):
    """A qubit or basis index lies outside its admissible range."""


class NotHermitian(FgnsimError):
    """A matrix required to be Hermitian is not, within tolerance."""


class NoConvergence(FgnsimError):
    """The eigensolver did not converge within its sweep limit."""


class DomainError(FgnsimError):
    """A parameter lies outside its admissible domain."""


class CholeskyFailure(FgnsimError):
    """A covariance matrix is not numerically positive definite."""


class MapNumericsError(FgnsimError):
    """The dephasing map produced an invalid density matrix."""


class NegativeEigenvalue(FgnsimError):
    """An eigenvalue is more negative than the PSD tolerance allows."""


class ConfigError(FgnsimError):
    """A sweep configuration file is malformed."""


class EmptyInput(FgnsimError):
    """An operation received no records to work on."""
