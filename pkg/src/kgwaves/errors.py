"""Exception types raised across the package."""


class KGWavesError(Exception):
    """Base class for all package errors."""


class AliasingError(KGWavesError):
    """A quadrature grid is too coarse for the requested truncation."""


class SingularOperator(KGWavesError):
    """The linear wave operator is (numerically) not invertible."""


class InvalidRegime(KGWavesError):
    """Parameters lie outside the regime where a bound is defined."""


class PreconditionViolated(KGWavesError):
    """A documented precondition of an operation does not hold."""


class Diverged(KGWavesError):
    """An iterative solver failed to reach its tolerance."""


class LinearSolveFailure(KGWavesError):
    """The inner Krylov solve of a Newton step did not converge."""


class ConsistencyError(KGWavesError):
    """Lattice geometry is inconsistent with the travelling-wave ansatz."""


class Blowup(KGWavesError):
    """Lattice trajectory left the bounded region during integration."""


class ConfigError(KGWavesError):
    """Invalid run configuration."""
