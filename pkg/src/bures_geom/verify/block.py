"""Block-matrix characterization of the generalized fidelity.

For a PD triple ``(P, Q, R)`` the 3d x 3d matrix ``X = T T*`` with
``T = [P^{1/2} U_P; Q^{1/2} U_Q; R^{1/2}]`` has the states on its
diagonal blocks and is the optimal point of the total-fidelity program
``max <A, X>`` subject to ``X >= 0`` and block-diagonal part ``B``.
The fidelity and distance are read off with the fixed matrices ``K, J``.
"""

from dataclasses import dataclass

import numpy as np

from .. import linalg as la
from ..fidelity import polar_unitaries


@dataclass(frozen=True)
class BlockSystem:
    A: np.ndarray
    B: np.ndarray
    K: np.ndarray
    J: np.ndarray
    X_star: np.ndarray
    dim: int

    def phi(self, X=None):
        """Block-diagonal projection (the program's constraint map)."""
        X = self.X_star if X is None else X
        d = self.dim
        out = np.zeros_like(X)
        for i in range(3):
            s = slice(i * d, (i + 1) * d)
            out[s, s] = X[s, s]
        return out


def _blocks(d, entries):
    M = np.zeros((3 * d, 3 * d), dtype=complex)
    I = np.eye(d)
    for (i, j), c in entries.items():
        M[i * d:(i + 1) * d, j * d:(j + 1) * d] = c * I
    return M


def build_block_system(P, Q, R):
    """Assemble ``A, B, K, J`` and the closed-form optimal point ``X_star``."""
    up, uq = polar_unitaries(P, Q, R)
    d = up.shape[0]
    T = np.vstack([la.sqrtm(P) @ up, la.sqrtm(Q) @ uq, la.sqrtm(R)])
    X = la.hermitian_part(T @ T.conj().T)
    B = np.zeros_like(X)
    for i, M in enumerate((P, Q, R)):
        B[i * d:(i + 1) * d, i * d:(i + 1) * d] = M
    A = _blocks(d, {(0, 2): 0.5, (1, 2): 0.5, (2, 0): 0.5, (2, 1): 0.5})
    K = _blocks(d, {(0, 1): 1.0})
    J = _blocks(d, {(0, 0): 1.0, (0, 1): -1.0, (1, 0): -1.0, (1, 1): 1.0})
    return BlockSystem(A, B, K, J, X, d)


def trace_inner(A, X):
    """``<A, X> = Tr[A* X]``."""
    return complex(np.vdot(A, X))


def extract_from_block(system):
    """Return ``(F_R, Re F_R, B_R)`` from the optimal point.

    ``F_R`` sits in the (2,1) block, so it is ``Tr[K X] = conj <K, X>``.
    """
    X = system.X_star
    F = complex(np.trace(system.K @ X))
    re = trace_inner(0.5 * (system.K + system.K.conj().T), X).real
    B = trace_inner(system.J, X).real
    return F, re, B


def objective(system):
    return trace_inner(system.A, system.X_star).real
