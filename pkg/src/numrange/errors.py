"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input fails a structural precondition."""


class SchemaError(ValidationError):
    """Raised when a matrix document violates the JSON schema.

    Carries the offending field name so CLI diagnostics can point at it.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class NonConvergenceError(RuntimeError):
    """Raised when an eigenvalue or singular value iteration fails.

    Never swallowed: callers either handle it or let it surface.
    """


class ResolutionError(RuntimeError):
    """Raised when boundary samples cannot cover the requested dyadic scales.

    ``finest_scale`` is the smallest |x| that was actually reachable; the
    caller may refine the source curve and retry.
    """

    def __init__(self, message, finest_scale=None):
        super().__init__(message)
        self.finest_scale = finest_scale


class NotOnBoundaryError(ValueError):
    """Raised when a query point is not attained on the sampled boundary."""
