"""Exception hierarchy shared by the simulation modules."""


class MagnomechError(Exception):
    """Base class for all errors raised by :mod:`magnomech`."""


class DomainError(MagnomechError, ValueError):
    """An input lies outside the domain of an operation."""


class PhysicsError(MagnomechError):
    """The requested configuration has no physical steady state."""


class SingularSteadyStateError(PhysicsError):
    """The steady-state amplitude equation has a vanishing denominator."""


class ConvergenceError(PhysicsError):
    """An iterative solve did not reach its tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class UnstableSystemError(PhysicsError):
    """The drift matrix is not strictly stable, so no steady state exists."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnphysicalStateError(PhysicsError):
    """A covariance matrix violates a positivity or uncertainty condition."""


class NumericalError(MagnomechError):
    """A linear-algebra routine failed or two computation routes disagree."""


class ConfigError(MagnomechError, ValueError):
    """A configuration file or override could not be interpreted."""
