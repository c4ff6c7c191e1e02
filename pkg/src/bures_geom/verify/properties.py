"""Randomized checks of the basic properties of the generalized fidelity.

Each check draws its inputs from ``rng`` and returns one residual, to be
compared with ``fidelity.PROPERTY_TOLERANCES[name]``.
"""

import numpy as np

from .. import linalg as la
from ..fidelity import (
    PROPERTY_TOLERANCES,
    classical_fidelity,
    generalized_fidelity,
    generalized_fidelity_pure,
    holevo,
    matsumoto,
    uhlmann,
)


def _F(P, Q, R, form="definition"):
    return complex(generalized_fidelity(P, Q, R, form))


def _scale(P, Q):
    return float(np.sqrt(np.trace(P).real * np.trace(Q).real))


def _triple(rng, d, cap):
    return tuple(la.positive_from_rng(rng, d, cap) for _ in range(3))


def _diag_in(V, w):
    return la.hermitian_part((V * w) @ V.conj().T)


def quantization(rng, d, cap):
    V = la.unitary_from_rng(rng, d)
    p, q, r = (rng.uniform(1.0 / cap, 1.0, d) for _ in range(3))
    F = _F(_diag_in(V, p), _diag_in(V, q), _diag_in(V, r))
    return abs(F - classical_fidelity(p, q)) / np.sqrt(p.sum() * q.sum())


def conjugate_symmetry(rng, d, cap):
    P, Q, R = _triple(rng, d, cap)
    return abs(_F(P, Q, R) - _F(Q, P, R).conjugate()) / _scale(P, Q)


def self_fidelity(rng, d, cap):
    P, _, R = _triple(rng, d, cap)
    tr = np.trace(P).real
    return abs(_F(P, P, R) - tr) / tr


def equivalent_forms(rng, d, cap):
    P, Q, R = _triple(rng, d, cap)
    ref = _F(P, Q, R)
    s = max(abs(ref), _scale(P, Q))
    return max(abs(_F(P, Q, R, f) - ref) / s for f in ("polar", "geomean"))


def pure_state(rng, d, cap):
    psi, phi = (v / np.linalg.norm(v) for v in la.ginibre(d, rng)[:, :2].T)
    R = la.positive_from_rng(rng, d, cap)
    closed = generalized_fidelity_pure(psi, phi, R)
    return abs(closed - _F(np.outer(psi, psi.conj()), np.outer(phi, phi.conj()), R))


def commuting_base_reality(rng, d, cap):
    P, Q, _ = _triple(rng, d, cap)
    s = la.spectral_decompose(P)
    R = _diag_in(s.eigenvectors, rng.uniform(1.0 / cap, 1.0, d))
    # base commuting with P, then with Q (swap roles)
    sq = la.spectral_decompose(Q)
    R2 = _diag_in(sq.eigenvectors, rng.uniform(1.0 / cap, 1.0, d))
    return max(abs(_F(P, Q, R).imag), abs(_F(P, Q, R2).imag)) / _scale(P, Q)


def multiplicativity(rng, d, cap):
    # factor dims kept small so the Kronecker products stay at desk scale
    d1, d2 = 2, max(2, d // 2)
    c = np.sqrt(cap)
    P1, Q1, R1 = _triple(rng, d1, c)
    P2, Q2, R2 = _triple(rng, d2, c)
    lhs = _F(np.kron(P1, P2), np.kron(Q1, Q2), np.kron(R1, R2))
    rhs = _F(P1, Q1, R1) * _F(P2, Q2, R2)
    return abs(lhs - rhs) / (_scale(P1, Q1) * _scale(P2, Q2))


def _dsum(A, B):
    n, m = A.shape[0], B.shape[0]
    out = np.zeros((n + m, n + m), dtype=complex)
    out[:n, :n] = A
    out[n:, n:] = B
    return out


def additivity(rng, d, cap):
    d1, d2 = max(1, d // 2), max(1, d - d // 2)
    P1, Q1, R1 = _triple(rng, d1, cap)
    P2, Q2, R2 = _triple(rng, d2, cap)
    lhs = _F(_dsum(P1, P2), _dsum(Q1, Q2), _dsum(R1, R2))
    rhs = _F(P1, Q1, R1) + _F(P2, Q2, R2)
    return abs(lhs - rhs) / _scale(_dsum(P1, P2), _dsum(Q1, Q2))


def unitary_invariance(rng, d, cap):
    P, Q, R = _triple(rng, d, cap)
    U = la.unitary_from_rng(rng, d)
    conj = lambda A: la.hermitian_part(U @ A @ U.conj().T)
    return abs(_F(conj(P), conj(Q), conj(R)) - _F(P, Q, R)) / _scale(P, Q)


def unitary_contravariance(rng, d, cap):
    P, Q, R = _triple(rng, d, cap)
    U = la.unitary_from_rng(rng, d)
    lhs = _F(P, Q, la.hermitian_part(U @ R @ U.conj().T))
    rhs = _F(*(la.hermitian_part(U.conj().T @ A @ U) for A in (P, Q)), R)
    return abs(lhs - rhs) / _scale(P, Q)


def scaling(rng, d, cap):
    P, Q, R = _triple(rng, d, cap)
    p, q, r = np.exp(rng.uniform(-3.0, 3.0, 3))
    lhs = _F(p * P, q * Q, r * R)
    return abs(lhs - np.sqrt(p * q) * _F(P, Q, R)) / (np.sqrt(p * q) * _scale(P, Q))


def uhlmann_bound(rng, d, cap):
    """Positive part of ``|F_R| - F^U``, relative."""
    P, Q, R = _triple(rng, d, cap)
    return max(0.0, abs(_F(P, Q, R)) - uhlmann(P, Q)) / _scale(P, Q)


def orthogonal_support(rng, d, cap):
    d = max(d, 2)
    U = la.unitary_from_rng(rng, d)
    k = int(rng.integers(1, d))
    P = _diag_in(U[:, :k], rng.uniform(0.1, 1.0, k))
    Q = _diag_in(U[:, k:], rng.uniform(0.1, 1.0, d - k))
    R = la.positive_from_rng(rng, d, cap)
    return abs(_F(P, Q, R)) / _scale(P, Q)


def named_reductions(rng, d, cap):
    P, Q, _ = _triple(rng, d, cap)
    fu, fh, fm = uhlmann(P, Q), holevo(P, Q), matsumoto(P, Q)
    s = _scale(P, Q)
    cases = [
        (P, fu), (Q, fu), (np.eye(d), fh), (la.invm(P), fm), (la.invm(Q), fm),
    ]
    return max(abs(_F(P, Q, R) - ref) / max(ref, s) for R, ref in cases)


def fidelity_ordering(rng, d, cap):
    """Violation of ``F^M <= F^H <= F^U``, relative."""
    P, Q, _ = _triple(rng, d, cap)
    fu, fh, fm = uhlmann(P, Q), holevo(P, Q), matsumoto(P, Q)
    return max(0.0, fm - fh, fh - fu) / _scale(P, Q)


def gamma_commuting(rng, d, cap):
    """Triples with ``P R Q = Q R P`` give the Matsumoto value."""
    R = la.positive_from_rng(rng, d, cap)
    V = la.unitary_from_rng(rng, d)
    # R^{1/2} P R^{1/2} and R^{1/2} Q R^{1/2} share eigenvectors V
    ri = la.invsqrtm(R)
    P = la.hermitian_part(ri @ _diag_in(V, rng.uniform(1.0 / np.sqrt(cap), 1.0, d)) @ ri)
    Q = la.hermitian_part(ri @ _diag_in(V, rng.uniform(1.0 / np.sqrt(cap), 1.0, d)) @ ri)
    fm = matsumoto(P, Q)
    return abs(_F(P, Q, R) - fm) / max(fm, _scale(P, Q))


CHECKS = {
    "quantization": quantization,
    "conjugate_symmetry": conjugate_symmetry,
    "self_fidelity": self_fidelity,
    "equivalent_forms": equivalent_forms,
    "pure_state": pure_state,
    "commuting_base_reality": commuting_base_reality,
    "multiplicativity": multiplicativity,
    "additivity": additivity,
    "unitary_invariance": unitary_invariance,
    "unitary_contravariance": unitary_contravariance,
    "scaling": scaling,
    "uhlmann_bound": uhlmann_bound,
    "orthogonal_support": orthogonal_support,
    "named_reductions": named_reductions,
    "fidelity_ordering": fidelity_ordering,
    "gamma_commuting": gamma_commuting,
}

assert set(CHECKS) == set(PROPERTY_TOLERANCES)
