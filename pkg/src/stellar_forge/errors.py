"""Exception types shared across the package."""


class StellarForgeError(Exception):
    """Base class for all package errors."""


class DomainError(StellarForgeError, ValueError):
    """Invalid argument: out of range, wrong dimension, degenerate input."""


class NonConvergenceError(StellarForgeError, RuntimeError):
    """An iterative routine failed to converge.

    Carries the best iterate(s) seen and the achieved residual so callers
    can inspect or retry with different options.
    """

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual
