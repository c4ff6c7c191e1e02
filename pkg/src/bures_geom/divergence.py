"""Rényi-type divergences, classical and quantum.

All divergences return bits by default (``log_base=2``); pass
``log_base=np.e`` for nats.  Order ``alpha = 1`` is never evaluated
directly; use :func:`umegaki` or :func:`belavkin_staszewski` instead.
"""

import numpy as np

from . import linalg as la
from .errors import DomainError, InputError


def _log(x, log_base):
    return np.log(x) / np.log(log_base)


def _check_alpha(alpha):
    if not np.isfinite(alpha) or alpha <= 0 or alpha == 1:
        raise DomainError(f"alpha must lie in (0,1) or (1,inf), got {alpha!r}")
    return float(alpha)


def classical_renyi(p, q, alpha, log_base=2.0):
    """``log(sum p^alpha q^(1-alpha)) / (alpha - 1)``.

    Returns ``inf`` when ``alpha > 1`` and ``p`` is not supported inside ``q``.
    """
    alpha = _check_alpha(alpha)
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    if p.shape != q.shape:
        raise InputError("length mismatch")
    if np.any(p < 0) or np.any(q < 0):
        raise InputError("probability vectors must be nonnegative")
    if alpha > 1 and np.any((p > 0) & (q == 0)):
        return np.inf
    mask = (p > 0) & (q > 0)
    s = np.sum(p[mask] ** alpha * q[mask] ** (1.0 - alpha))
    return float(_log(s, log_base) / (alpha - 1.0))


def _density_and_pd(P, Q):
    sp = la.psd_decompose(P, "P")
    sq = la.positive_decompose(Q, name="Q")
    la.check_same_dim(sp.eigenvectors, sq.eigenvectors)
    return sp, sq


def _alpha_z_trace(sp, sq, alpha, z):
    # z < 0 is allowed here: the reverse sandwich at alpha > 1 has z = 1 - alpha
    a = alpha / (2.0 * z)
    b = (1.0 - alpha) / z
    if z < 0:
        # (P^a Q^b P^a)^z == (P^-a Q^-b P^-a)^-z, keeps the power of P positive
        a, b, z = -a, -b, -z
    if a < 0 and not la.is_positive_definite(sp):
        raise DomainError("negative power of a rank-deficient P")
    pa = sp.apply(lambda w: np.where(w > 0, w, 0.0) ** a if a > 0 else w ** a)
    qb = sq.apply(lambda w: w ** b)
    w = la._eigh(la.hermitian_part(pa @ qb @ pa)).eigenvalues
    return float(np.sum(np.clip(w, 0.0, None) ** z))


def _from_trace(t, alpha, log_base):
    if not t > 0:
        raise DomainError(f"trace functional is not positive ({t!r})")
    return float(_log(t, log_base) / (alpha - 1.0))


def alpha_z_divergence(P, Q, alpha, z, log_base=2.0):
    """``log Tr[(P^{a/2z} Q^{(1-a)/z} P^{a/2z})^z] / (a - 1)`` with ``z > 0``."""
    alpha = _check_alpha(alpha)
    if not (np.isfinite(z) and z > 0):
        raise DomainError(f"z must be positive, got {z!r}")
    sp, sq = _density_and_pd(P, Q)
    return _from_trace(_alpha_z_trace(sp, sq, alpha, z), alpha, log_base)


def petz(P, Q, alpha, log_base=2.0):
    """Petz-Rényi divergence (``z = 1``)."""
    return alpha_z_divergence(P, Q, alpha, 1.0, log_base)


def sandwich(P, Q, alpha, log_base=2.0):
    """Sandwiched Rényi divergence (``z = alpha``)."""
    return alpha_z_divergence(P, Q, alpha, alpha, log_base)


def reverse_sandwich(P, Q, alpha, log_base=2.0):
    """Reverse sandwiched divergence (``z = 1 - alpha``).

    The trace functional is ``Tr[(P^{a/2(1-a)} Q P^{a/2(1-a)})^{1-a}]``; for
    ``alpha > 1`` the exponents are negative and ``P`` must be PD.
    """
    alpha = _check_alpha(alpha)
    sp, sq = _density_and_pd(P, Q)
    return _from_trace(_alpha_z_trace(sp, sq, alpha, 1.0 - alpha), alpha, log_base)


def geometric_renyi(P, Q, alpha, log_base=2.0):
    """``log Tr[Q #_alpha P] / (alpha - 1)`` via the weighted geometric mean."""
    alpha = _check_alpha(alpha)
    t = np.trace(la.weighted_geometric_mean(Q, P, alpha)).real
    return _from_trace(t, alpha, log_base)


def umegaki(P, Q, log_base=2.0):
    """``Tr[P (log P - log Q)]`` with ``0 log 0 = 0``."""
    sp, sq = _density_and_pd(P, Q)
    w = sp.eigenvalues
    plogp = np.sum(w[w > 0] * np.log(w[w > 0]))
    logq = sq.apply(np.log)
    cross = np.real(np.trace(sp.reconstruct() @ logq))
    return float((plogp - cross) / np.log(log_base))


def belavkin_staszewski(P, Q, log_base=2.0):
    """``Tr[P log(P^{1/2} Q^{-1} P^{1/2})]`` (PD ``P``)."""
    sp = la.positive_decompose(P, name="P")
    sq = la.positive_decompose(Q, name="Q")
    la.check_same_dim(sp.eigenvectors, sq.eigenvectors)
    ph = sp.apply(np.sqrt)
    inner = la._eigh(la.hermitian_part(ph @ sq.apply(lambda w: 1.0 / w) @ ph)).apply(np.log)
    return float(np.real(np.trace(sp.reconstruct() @ inner)) / np.log(log_base))


def max_relative(P, Q, log_base=2.0):
    """``log lambda_max(Q^{-1/2} P Q^{-1/2})``."""
    sp, sq = _density_and_pd(P, Q)
    qi = sq.apply(lambda w: 1.0 / np.sqrt(w))
    lam = la._eigh(la.hermitian_part(qi @ sp.reconstruct() @ qi)).eigenvalues[-1]
    return _log(lam, log_base).item()


def generalized_trace_functional(P, Q, R, alpha):
    """``Tr[(R^{1/2} P R^{1/2})^a R^{-1} (R^{1/2} Q R^{1/2})^{1-a}]`` (complex)."""
    alpha = _check_alpha(alpha)
    sr = la.positive_decompose(R, name="R")
    P = la.as_positive(P, name="P")
    Q = la.as_positive(Q, name="Q")
    la.check_same_dim(sr.eigenvectors, P, Q)
    rh = sr.apply(np.sqrt)
    left = la._eigh(la.hermitian_part(rh @ P @ rh)).apply(lambda w: w ** alpha)
    right = la._eigh(la.hermitian_part(rh @ Q @ rh)).apply(lambda w: w ** (1.0 - alpha))
    return complex(np.trace(left @ sr.apply(lambda w: 1.0 / w) @ right))


def generalized_renyi(P, Q, R, alpha, log_base=2.0):
    """``log Re F_R^alpha(P, Q) / (alpha - 1)``.

    Raises
    ------
    DomainError
        When the real part of the trace functional is not positive.
    """
    t = generalized_trace_functional(P, Q, R, alpha).real
    return _from_trace(t, alpha, log_base)


def recovery_bases(P, Q, alpha):
    """Bases at which :func:`generalized_renyi` reduces to a named divergence.

    Returns a dict mapping ``"petz"``, ``"sandwich"``, ``"reverse_sandwich"``
    and ``"geometric"`` to ``R``.
    """
    alpha = _check_alpha(alpha)
    d = la.as_square(P).shape[0]
    return {
        "petz": np.eye(d, dtype=complex),
        "sandwich": la.powm(Q, (1.0 - alpha) / alpha),
        "reverse_sandwich": la.powm(P, alpha / (1.0 - alpha)),
        "geometric": la.invm(Q),
    }


NAMED = {
    "petz": petz,
    "sandwich": sandwich,
    "reverse_sandwich": reverse_sandwich,
    "geometric": geometric_renyi,
}
