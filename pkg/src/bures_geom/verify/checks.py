"""Determinant check on the unitary factor and the monotonicity scan."""

import numpy as np

from .. import linalg as la
from ..fidelity import generalized_fidelity, unitary_factor


def check_su_d(P, Q, R):
    """``|det(U_Q U_P*) - 1|``."""
    return float(abs(np.linalg.det(unitary_factor(P, Q, R)) - 1.0))


def monotonicity_scan(P, Q, xs=None):
    """Tabulate ``F_{P^x}``, ``F_{Q^x}`` and their average on a grid of ``x``.

    Nothing is asserted; ``monotone`` reports whether the real parts were
    observed nondecreasing in ``x`` (within 1e-12).
    """
    xs = np.linspace(-1.0, 1.0, 21) if xs is None else np.asarray(xs, dtype=float)
    fp, fq = [], []
    for x in xs:
        fp.append(complex(generalized_fidelity(P, Q, la.powm(P, x))))
        fq.append(complex(generalized_fidelity(P, Q, la.powm(Q, x))))
    fp = np.array(fp)
    fq = np.array(fq)
    avg = 0.5 * (fp + fq)

    def nondecreasing(v):
        return bool(np.all(np.diff(v.real) >= -1e-12))

    return {
        "x": xs.tolist(),
        "F_P": fp.real.tolist(),
        "F_Q": fq.real.tolist(),
        "F_bar": avg.real.tolist(),
        "monotone": {
            "F_P": nondecreasing(fp),
            "F_Q": nondecreasing(fq),
            "F_bar": nondecreasing(avg),
        },
    }
