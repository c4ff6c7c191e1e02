"""The eleven base paths between P and Q and what each preserves.

Paths 1, 2 keep ``F_R`` at the Uhlmann value; 9, 10, 11 keep it at the
Matsumoto value; 3 and 8, and 4 and 7, give equal values at equal ``t``;
5 and 6 (``R = P^{1-2t}``, ``Q^{1-2t}``) stay real and hit Uhlmann,
Holevo and Matsumoto at ``t = 0, 1/2, 1``.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .. import linalg as la
from ..fidelity import generalized_fidelity, holevo, matsumoto, uhlmann
from ..manifold import AI, BW, geodesic_point

PATH_IDS = tuple(range(1, 12))
ANCHOR_TS = (0.0, 0.5, 1.0)


class Expectation(Enum):
    UHLMANN_INVARIANT = "uhlmann-invariant"
    MATSUMOTO_INVARIANT = "matsumoto-invariant"
    COVARIANT_PAIR = "covariant-pair"
    NAMED_RECOVERY_AT_ANCHORS = "named-recovery-at-anchors"


EXPECTATION = {
    1: Expectation.UHLMANN_INVARIANT,
    2: Expectation.UHLMANN_INVARIANT,
    3: Expectation.COVARIANT_PAIR,
    4: Expectation.COVARIANT_PAIR,
    5: Expectation.NAMED_RECOVERY_AT_ANCHORS,
    6: Expectation.NAMED_RECOVERY_AT_ANCHORS,
    7: Expectation.COVARIANT_PAIR,
    8: Expectation.COVARIANT_PAIR,
    9: Expectation.MATSUMOTO_INVARIANT,
    10: Expectation.MATSUMOTO_INVARIANT,
    11: Expectation.MATSUMOTO_INVARIANT,
}

PARTNER = {3: 8, 8: 3, 4: 7, 7: 4}


def path_base(path, P, Q, t):
    """Base ``R`` of the given path at parameter ``t``."""
    if path not in PATH_IDS:
        raise ValueError(f"path must be in 1..11, got {path!r}")
    t = float(t)
    P = la.as_positive(P, name="P")
    Q = la.as_positive(Q, name="Q")
    inv = la.invm
    if path == 1:
        return inv(geodesic_point(BW, inv(P), inv(Q), t))
    if path == 2:
        return geodesic_point(BW, P, Q, t)
    if path == 3:
        return inv(geodesic_point(BW, inv(P), Q, t))
    if path == 4:
        return geodesic_point(BW, P, inv(Q), t)
    if path == 5:
        return la.powm(P, 1.0 - 2.0 * t)
    if path == 6:
        return la.powm(Q, 1.0 - 2.0 * t)
    if path == 7:
        return geodesic_point(BW, Q, inv(P), t)
    if path == 8:
        return inv(geodesic_point(BW, inv(Q), P, t))
    if path == 9:
        return geodesic_point(AI, inv(P), inv(Q), t)
    if path == 10:
        return (1.0 - t) * inv(P) + t * inv(Q)
    return inv((1.0 - t) * P + t * Q)


@dataclass
class PathReport:
    path: int
    expected: Expectation
    samples: list = field(default_factory=list)
    max_residual: float = 0.0
    imag_residual: float = 0.0
    tol: float = 1e-8
    imag_tol: float = 1e-10
    verdict: str = "pass"

    def to_dict(self):
        return {
            "path": self.path,
            "expected": self.expected.value,
            "samples": [[t, {"re": f.real, "im": f.imag}] for t, f in self.samples],
            "max_residual": self.max_residual,
            "imag_residual": self.imag_residual,
            "verdict": self.verdict,
        }


def residual_scale(P, Q):
    """Scale for relative residuals: ``sqrt(Tr P Tr Q)``, the largest |F_R| can be.

    Compared values of size ``|b|`` use ``max(|b|, scale)``.
    """
    return float(np.sqrt(np.trace(P).real * np.trace(Q).real))


def _rel(a, b, scale):
    return abs(a - b) / max(abs(b), scale)


def check_path(path, P, Q, n_points=9, tol=1e-8, imag_tol=1e-10):
    """Sample ``F_R(P, Q)`` along a path and score it against the expected behaviour.

    ``n_points`` evenly spaced samples on ``[0, 1]``; it must be odd and at
    least 3 so that ``t = 1/2`` is included.  Failures are reported in the
    verdict, never raised.
    """
    if n_points < 3 or n_points % 2 == 0:
        raise ValueError("n_points must be odd and >= 3")
    P = la.as_positive(P, name="P")
    Q = la.as_positive(Q, name="Q")
    ts = np.linspace(0.0, 1.0, n_points)
    expected = EXPECTATION[path]
    scale = residual_scale(P, Q)
    report = PathReport(path, expected, tol=tol, imag_tol=imag_tol)
    values = [complex(generalized_fidelity(P, Q, path_base(path, P, Q, t))) for t in ts]
    report.samples = list(zip(ts.tolist(), values))
    res = 0.0
    if expected is Expectation.UHLMANN_INVARIANT:
        ref = uhlmann(P, Q)
        res = max(_rel(v, ref, scale) for v in values)
    elif expected is Expectation.MATSUMOTO_INVARIANT:
        ref = matsumoto(P, Q)
        res = max(_rel(v, ref, scale) for v in values)
    elif expected is Expectation.COVARIANT_PAIR:
        other = PARTNER[path]
        partner = [complex(generalized_fidelity(P, Q, path_base(other, P, Q, t))) for t in ts]
        res = max(_rel(v, w, scale) for v, w in zip(values, partner))
    else:
        anchors = dict(zip(ANCHOR_TS, (uhlmann(P, Q), holevo(P, Q), matsumoto(P, Q))))
        res = max(_rel(v, anchors[t], scale) for t, v in report.samples if t in anchors)
        report.imag_residual = max(abs(v.imag) for v in values)
    report.max_residual = float(res)
    ok = res <= tol and report.imag_residual <= imag_tol
    report.verdict = "pass" if ok else "fail"
    return report
