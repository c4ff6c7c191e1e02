"""Generalized fidelities and Bures-Wasserstein geometry on positive definite matrices."""

from ._backend import BACKEND
from .errors import (
    BuresGeomError,
    ConvergenceError,
    DimensionError,
    DomainError,
    InputError,
    PositivityError,
)

__version__ = "0.1.0"
