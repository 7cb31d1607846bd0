"""Exception types shared across the solver suite."""


class ConfigError(ValueError):
    """A run parameter violates its constraints (bad grid, key, or value)."""


class ConvergenceError(RuntimeError):
    """An iterative solve failed to reach its tolerance within its cap."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NumericalError(RuntimeError):
    """A computation produced non-finite values (blow-up or overflow)."""

    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time
