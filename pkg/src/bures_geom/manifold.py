"""Riemannian structures on positive definite matrices.

Three metrics are supported: Bures-Wasserstein (BW), affine-invariant (AI)
and Euclidean.  Tangent vectors at any point are Hermitian matrices.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import linalg as la
from .errors import DomainError

DOMAIN_FLOOR = 1e-12


class MetricKind(Enum):
    BURES_WASSERSTEIN = "bw"
    AFFINE_INVARIANT = "ai"
    EUCLIDEAN = "euclidean"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_")
        aliases = {
            "bw": cls.BURES_WASSERSTEIN,
            "bures_wasserstein": cls.BURES_WASSERSTEIN,
            "ai": cls.AFFINE_INVARIANT,
            "affine_invariant": cls.AFFINE_INVARIANT,
            "euc": cls.EUCLIDEAN,
            "euclidean": cls.EUCLIDEAN,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown metric {value!r}") from None


BW = MetricKind.BURES_WASSERSTEIN
AI = MetricKind.AFFINE_INVARIANT
EUCLIDEAN = MetricKind.EUCLIDEAN


@dataclass(frozen=True)
class TangentVector:
    """Hermitian ``direction`` attached to the point ``base`` under ``metric``."""

    base: np.ndarray
    direction: np.ndarray
    metric: MetricKind

    def __post_init__(self):
        la.check_same_dim(self.base, self.direction)


def _pair(P, Q):
    sp = la.positive_decompose(P, name="P")
    Q = la.as_positive(Q, name="Q")
    la.check_same_dim(sp.eigenvectors, Q)
    return sp, la.hermitian_part(np.asarray(P, dtype=complex)), Q


def bw_transport_map(P, Q, decomposition=None):
    """``S = P^{-1} # Q``, the map pushing P onto Q along the BW geodesic.

    Computed as ``P^{-1/2} (P^{1/2} Q P^{1/2})^{1/2} P^{-1/2}`` so only one
    decomposition of ``P`` is needed.
    """
    sp = decomposition if decomposition is not None else la.positive_decompose(P, name="P")
    ph = sp.apply(np.sqrt)
    phi = sp.apply(lambda w: 1.0 / np.sqrt(w))
    return la.hermitian_part(phi @ la.psd_sqrtm(ph @ Q @ ph) @ phi)


def inner_product(metric, P, X, Y):
    """Riemannian inner product of tangent vectors ``X, Y`` at ``P``.

    Examples
    --------
    >>> inner_product("bw", np.eye(2), np.eye(2), np.eye(2))
    0.5
    """
    metric = MetricKind.parse(metric)
    X = la.as_hermitian(X, "X")
    Y = la.as_hermitian(Y, "Y")
    if metric is EUCLIDEAN:
        la.check_same_dim(np.asarray(P), X, Y)
        return float(np.real(np.vdot(X.conj().T, Y)))
    sp = la.positive_decompose(P, name="P")
    la.check_same_dim(sp.eigenvectors, X, Y)
    if metric is AI:
        Pi = sp.apply(lambda w: 1.0 / w)
        return float(np.real(np.trace(Pi @ X @ Pi @ Y)))
    P = sp.reconstruct()
    LX = la.lyapunov_solve(P, X, sp)
    LY = la.lyapunov_solve(P, Y, sp)
    return float(np.real(np.trace(LX @ P @ LY)))


def norm_sq(metric, P, X):
    return inner_product(metric, P, X, X)


def _require_pd(M, metric, what):
    w = la._eigh(la.hermitian_part(M)).eigenvalues
    if w[0] <= DOMAIN_FLOOR:
        raise DomainError(
            f"{metric.name} {what} leaves the positive definite cone (min eigenvalue {w[0]:.3e})"
        )


def exp_map(metric, P, X):
    """Riemannian exponential at ``P`` applied to the tangent vector ``X``.

    Raises
    ------
    DomainError
        BW: ``I + L_P(X)`` is not positive definite.  Euclidean: ``P + X``
        is not positive definite.  AI is globally defined.
    """
    metric = MetricKind.parse(metric)
    if isinstance(X, TangentVector):
        X = X.direction
    sp = la.positive_decompose(P, name="P")
    X = la.as_hermitian(X, "X")
    la.check_same_dim(sp.eigenvectors, X)
    P = sp.reconstruct()
    d = P.shape[0]
    if metric is EUCLIDEAN:
        out = P + X
        _require_pd(out, metric, "exponential")
        return out
    if metric is AI:
        ph = sp.apply(np.sqrt)
        phi = sp.apply(lambda w: 1.0 / np.sqrt(w))
        inner = la._eigh(la.hermitian_part(phi @ X @ phi)).apply(np.exp)
        return la.hermitian_part(ph @ inner @ ph)
    M = np.eye(d) + la.lyapunov_solve(P, X, sp)
    _require_pd(M, metric, "exponential")
    return la.hermitian_part(M @ P @ M)


def log_map(metric, P, Q):
    """Riemannian logarithm of ``Q`` at ``P`` as a :class:`TangentVector`."""
    metric = MetricKind.parse(metric)
    sp, P, Q = _pair(P, Q)
    if metric is EUCLIDEAN:
        X = Q - P
    elif metric is AI:
        ph = sp.apply(np.sqrt)
        phi = sp.apply(lambda w: 1.0 / np.sqrt(w))
        inner = la._eigh(la.hermitian_part(phi @ Q @ phi)).apply(np.log)
        X = la.hermitian_part(ph @ inner @ ph)
    else:
        D = bw_transport_map(P, Q, sp) - np.eye(P.shape[0])
        X = la.hermitian_part(D @ P + P @ D)
    return TangentVector(P, X, metric)


def geodesic_point(metric, P, Q, t):
    """Point ``gamma_PQ(t)`` on the geodesic from ``P`` (t=0) to ``Q`` (t=1).

    Any real ``t`` is accepted for AI and Euclidean when the result stays
    positive definite.  For BW, ``t`` outside ``[0, 1]`` is rejected once
    ``(1-t) I + t S`` stops being positive definite.
    """
    metric = MetricKind.parse(metric)
    t = float(t)
    if not np.isfinite(t):
        raise DomainError(f"t must be finite, got {t}")
    sp, P, Q = _pair(P, Q)
    d = P.shape[0]
    if metric is EUCLIDEAN:
        out = (1.0 - t) * P + t * Q
        if not 0.0 <= t <= 1.0:
            _require_pd(out, metric, "geodesic extension")
        return out
    if metric is AI:
        ph = sp.apply(np.sqrt)
        phi = sp.apply(lambda w: 1.0 / np.sqrt(w))
        inner = la._eigh(la.hermitian_part(phi @ Q @ phi)).apply(lambda w: w ** t)
        return la.hermitian_part(ph @ inner @ ph)
    M = (1.0 - t) * np.eye(d) + t * bw_transport_map(P, Q, sp)
    if not 0.0 <= t <= 1.0:
        _require_pd(M, metric, "geodesic extension")
    return la.hermitian_part(M @ P @ M)


def squared_distance(metric, P, Q):
    """Squared geodesic distance.

    BW uses ``Tr P + Tr Q - 2 Tr sqrt(P^{1/2} Q P^{1/2})``, AI the squared
    Frobenius norm of ``log(P^{-1/2} Q P^{-1/2})``.
    """
    metric = MetricKind.parse(metric)
    sp, P, Q = _pair(P, Q)
    if metric is EUCLIDEAN:
        return float(np.sum(np.abs(P - Q) ** 2))
    ph = sp.apply(np.sqrt)
    if metric is AI:
        phi = sp.apply(lambda w: 1.0 / np.sqrt(w))
        w = la._eigh(la.hermitian_part(phi @ Q @ phi)).eigenvalues
        return float(np.sum(np.log(w) ** 2))
    w = la._eigh(la.hermitian_part(ph @ Q @ ph)).eigenvalues
    fu = float(np.sum(np.sqrt(np.clip(w, 0.0, None))))
    return max(0.0, float(np.trace(P).real + np.trace(Q).real) - 2.0 * fu)


def distance(metric, P, Q):
    return float(np.sqrt(squared_distance(metric, P, Q)))
