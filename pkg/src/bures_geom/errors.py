"""Exception hierarchy.

Each class carries the CLI exit code it maps to.
"""


class BuresGeomError(Exception):
    exit_code = 1


class InputError(BuresGeomError, ValueError):
    """Malformed input: bad JSON, wrong shape, non-Hermitian entries."""

    exit_code = 2


class DimensionError(BuresGeomError, ValueError):
    exit_code = 3


class PositivityError(BuresGeomError, ValueError):
    """A matrix required to be positive definite is not."""

    exit_code = 4


class DomainError(BuresGeomError, ValueError):
    """Argument outside the domain where the quantity is defined."""

    exit_code = 4


class ConvergenceError(BuresGeomError, RuntimeError):
    """An iteration hit its cap. ``residual`` holds the last defect."""

    exit_code = 5

    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations
