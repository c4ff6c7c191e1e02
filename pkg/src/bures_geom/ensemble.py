"""Weighted collections of matrices (states or bases)."""

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .errors import DimensionError, InputError

WEIGHT_ATOL = 1e-12


@dataclass(frozen=True)
class Ensemble:
    """Matrices ``members`` with probability weights.

    Weights must be nonnegative and sum to one within ``1e-12``.  When
    ``weights`` is omitted the uniform distribution is used.
    """

    members: tuple
    weights: np.ndarray

    def __init__(self, members, weights=None):
        members = tuple(la.as_hermitian(m, f"member {i}") for i, m in enumerate(members))
        if not members:
            raise InputError("ensemble must have at least one member")
        if len({m.shape[0] for m in members}) != 1:
            raise DimensionError("ensemble members differ in dimension")
        n = len(members)
        if weights is None:
            weights = np.full(n, 1.0 / n)
        weights = np.asarray(weights, dtype=float).ravel()
        if weights.shape[0] != n:
            raise InputError(f"{n} members but {weights.shape[0]} weights")
        if not np.all(np.isfinite(weights)) or np.any(weights < 0):
            raise InputError("weights must be finite and nonnegative")
        if abs(weights.sum() - 1.0) > WEIGHT_ATOL:
            raise InputError(f"weights sum to {weights.sum()!r}, not 1")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.members)

    @property
    def dim(self):
        return self.members[0].shape[0]

    # readable aliases for the two roles an ensemble plays
    @property
    def states(self):
        return self.members

    @property
    def bases(self):
        return self.members


BaseEnsemble = Ensemble
StateEnsemble = Ensemble
