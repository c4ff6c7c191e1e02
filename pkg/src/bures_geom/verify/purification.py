"""Purifications realizing the generalized fidelity as an overlap."""

import numpy as np

from .. import linalg as la
from ..fidelity import generalized_fidelity, polar_unitaries


def bell_vector(d):
    """Unnormalized ``|Omega> = sum_i |i>|i>``."""
    return np.eye(d, dtype=complex).reshape(-1)


def purify(P, U):
    """``(P^{1/2} kron U^T) |Omega>`` as a vector of length ``d**2``."""
    d = U.shape[0]
    return np.kron(la.sqrtm(P), U.T) @ bell_vector(d)


def partial_trace_second(v):
    """Reduced matrix on the first factor of ``|v><v|``."""
    d = int(round(np.sqrt(v.shape[0])))
    M = v.reshape(d, d)
    return M @ M.conj().T


def check_purification(P, Q, R):
    """Overlap of the base-``R`` purifications against ``F_R(P, Q)``.

    Returns
    -------
    dict
        ``overlap``, ``fidelity``, ``residual`` (absolute) and
        ``trace_residual``, the worst Frobenius error of the two partial traces.
    """
    up, uq = polar_unitaries(P, Q, R)
    vp = purify(P, up)
    vq = purify(Q, uq)
    overlap = complex(np.vdot(vp, vq))
    F = complex(generalized_fidelity(P, Q, R))
    tr_res = max(
        np.linalg.norm(partial_trace_second(vp) - la.as_square(P)),
        np.linalg.norm(partial_trace_second(vq) - la.as_square(Q)),
    )
    return {
        "overlap": overlap,
        "fidelity": F,
        "residual": abs(overlap - F),
        "trace_residual": float(tr_res),
    }
