"""Exception types shared across the package."""


class PoleError(ValueError):
    """A rational coefficient or moment is evaluated at a pole of its formula."""


class DomainError(ValueError):
    """Arguments outside the domain of an operation (bad indices, branch cuts, ...)."""


class ExistenceError(ValueError):
    """The requested object does not exist (singular moment system)."""


class ConvergenceError(RuntimeError):
    """Root iteration failed to converge; carries the best iterate found."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class TrackingError(RuntimeError):
    """Zero-path continuation could not match consecutive root sets."""

    def __init__(self, message, omega=None):
        super().__init__(message)
        self.omega = omega
