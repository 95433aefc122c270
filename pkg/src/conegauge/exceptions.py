"""Exception hierarchy for conegauge."""


class ConeError(ValueError):
    """Invalid cone or gauge data (bad generators, vectors outside K+, ...)."""


class DimensionError(ValueError):
    """A point or matrix does not match the ambient dimension."""


class ConvergenceError(RuntimeError):
    """An iterative solver hit its iteration cap before certifying a solution.

    The best quality measure reached (duality gap, KKT residual) is kept
    on ``best`` so callers can decide whether it is good enough anyway.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class UnsupportedError(NotImplementedError):
    """Operation requested outside the supported problem size or cone family."""
