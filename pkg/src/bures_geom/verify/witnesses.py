"""Rebit witnesses for the qualitative behaviour of F_R over the Bloch disk.

A rebit is a real 2x2 density matrix ``(I + x X + z Z) / 2`` with
``x**2 + z**2 <= 1``.  Bases are kept at least ``DISK_MARGIN`` inside the
disk so they stay strictly positive definite.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..errors import DimensionError
from ..fidelity import classical_fidelity, generalized_fidelity, uhlmann
from ..manifold import BW, geodesic_point

DISK_MARGIN = 1e-6

# (a) commuting pair whose generalized fidelity differs from the classical value
COMMUTING_PAIR = ((0.0, 0.5), (0.0, -0.3))
COMMUTING_BASE = (0.9, 0.0)
# (b) pair and base with negative real part
NEGATIVE_PAIR = ((0.95, 0.3), (-0.3, -0.95))
NEGATIVE_BASE = (-0.82, 0.55)
# (c) pair for the constant-Uhlmann geodesic
GEODESIC_PAIR = ((0.0, 0.5), (0.5, 0.0))

GAP_MIN = 1e-3
NEGATIVE_MAX = -1e-3
GEODESIC_TOL = 1e-8
IMAG_TOL = 1e-10


def rebit(x, z):
    return np.array([[1.0 + z, x], [x, 1.0 - z]], dtype=complex) / 2.0


def bloch_xz(M):
    """``(x, z)`` of a real 2x2 density matrix; raises for anything else."""
    M = np.asarray(M, dtype=complex)
    if M.shape != (2, 2):
        raise DimensionError(f"rebit inputs must be 2x2, got {M.shape}")
    if np.max(np.abs(M.imag)) > 1e-12 or abs(np.trace(M).real - 1.0) > 1e-9:
        raise DimensionError("rebit inputs must be real with unit trace")
    return float(2.0 * M[0, 1].real), float((M[0, 0] - M[1, 1]).real)


def rebit_grid(P, Q, resolution=64, threads=1):
    """``F_R(P, Q)`` for rebit bases on a square grid clipped to the open disk.

    Cells are independent and may be spread over ``threads`` workers; rows
    come out in lexicographic ``(x, z)`` order as ``(x, z, re_F, im_F)``.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    axis = np.linspace(-1.0, 1.0, resolution)
    cells = [(float(x), float(z)) for x in axis for z in axis if x * x + z * z < 1.0 - DISK_MARGIN]

    def one(cell):
        F = complex(generalized_fidelity(P, Q, rebit(*cell)))
        return cell + (F.real, F.imag)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(one, cells))
    return [one(c) for c in cells]


def geodesic_samples(P, Q, ts=None):
    """``(t, x, z, re_F, im_F)`` with the base on the BW geodesic from P to Q."""
    ts = np.round(np.linspace(0.0, 1.0, 11), 12) if ts is None else ts
    rows = []
    for t in ts:
        R = geodesic_point(BW, P, Q, t)
        F = complex(generalized_fidelity(P, Q, R))
        rows.append((float(t), float(2.0 * R[0, 1].real), float((R[0, 0] - R[1, 1]).real), F.real, F.imag))
    return rows


def commuting_gap():
    """Witness (a): commuting P, Q and a base where F_R is not classical."""
    P, Q = (rebit(*c) for c in COMMUTING_PAIR)
    F = complex(generalized_fidelity(P, Q, rebit(*COMMUTING_BASE)))
    fc = classical_fidelity(np.diag(P).real, np.diag(Q).real)
    gap = abs(F - fc)
    return {
        "name": "commuting_gap",
        "P": COMMUTING_PAIR[0], "Q": COMMUTING_PAIR[1], "R": COMMUTING_BASE,
        "F": F, "classical": fc, "gap": gap, "passed": gap >= GAP_MIN,
    }


def negative_real_part():
    """Witness (b): a base giving ``Re F_R < 0``."""
    P, Q = (rebit(*c) for c in NEGATIVE_PAIR)
    F = complex(generalized_fidelity(P, Q, rebit(*NEGATIVE_BASE)))
    return {
        "name": "negative_real_part",
        "P": NEGATIVE_PAIR[0], "Q": NEGATIVE_PAIR[1], "R": NEGATIVE_BASE,
        "F": F, "passed": F.real < NEGATIVE_MAX,
    }


def geodesic_constant():
    """Witness (c): F_R equals the Uhlmann value for every base on the BW geodesic."""
    P, Q = (rebit(*c) for c in GEODESIC_PAIR)
    fu = uhlmann(P, Q)
    rows = geodesic_samples(P, Q)
    variation = max(abs(r[3] - fu) for r in rows)
    imag = max(abs(r[4]) for r in rows)
    return {
        "name": "geodesic_constant",
        "P": GEODESIC_PAIR[0], "Q": GEODESIC_PAIR[1],
        "uhlmann": fu, "variation": variation, "max_imag": imag,
        "passed": variation <= GEODESIC_TOL and imag <= IMAG_TOL,
    }


def all_witnesses():
    return [commuting_gap(), negative_real_part(), geodesic_constant()]
