"""Fidelities between positive (semi)definite matrices.

Named fidelities (Uhlmann, Holevo, Matsumoto, log-Euclidean, z-fidelity),
the base-dependent generalized fidelity ``F_R(P, Q)`` in three equivalent
forms, the generalized Bures distance built from it, and the polar and
interior averages over bases.

Notes
-----
The generalized fidelity at base ``R`` is

    F_R(P, Q) = Tr[ sqrt(R^{1/2} P R^{1/2}) R^{-1} sqrt(R^{1/2} Q R^{1/2}) ]

and is complex in general.  ``R = P`` or ``R = Q`` gives Uhlmann, ``R = I``
gives Holevo, ``R = P^{-1}`` or ``R = Q^{-1}`` gives Matsumoto.
"""

from enum import Enum

import numpy as np

from . import linalg as la
from .ensemble import Ensemble
from .errors import DomainError, InputError, PositivityError

# Tolerances for the property checks in :mod:`bures_geom.verify.properties`.
# Residuals are relative to sqrt(Tr P Tr Q), the largest value |F_R| can take,
# except the reality checks, which are absolute on O(1) inputs.
PROPERTY_TOLERANCES = {
    "quantization": 1e-8,
    "conjugate_symmetry": 1e-8,
    "self_fidelity": 1e-8,
    "equivalent_forms": 1e-9,
    "pure_state": 1e-9,
    "commuting_base_reality": 1e-10,
    "multiplicativity": 1e-8,
    "additivity": 1e-8,
    "unitary_invariance": 1e-8,
    "unitary_contravariance": 1e-8,
    "scaling": 1e-8,
    "uhlmann_bound": 1e-10,
    "orthogonal_support": 1e-10,
    "named_reductions": 1e-9,
    "fidelity_ordering": 1e-10,
    "gamma_commuting": 1e-8,
}


class FidelityForm(Enum):
    DEFINITION = "definition"
    POLAR_UNITARY = "polar"
    GEOMETRIC_MEAN = "geomean"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_")
        aliases = {
            "definition": cls.DEFINITION,
            "polar": cls.POLAR_UNITARY,
            "polar_unitary": cls.POLAR_UNITARY,
            "geomean": cls.GEOMETRIC_MEAN,
            "geometric_mean": cls.GEOMETRIC_MEAN,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown fidelity form {value!r}") from None


class FidelityValue(complex):
    """Complex number remembering the formula and base that produced it."""

    def __new__(cls, value, form=FidelityForm.DEFINITION, base_tag=None):
        self = super().__new__(cls, complex(value))
        self.form = FidelityForm.parse(form)
        self.base_tag = base_tag
        return self

    def __repr__(self):
        tag = f", base={self.base_tag!r}" if self.base_tag is not None else ""
        return f"FidelityValue({complex(self)!r}, form={self.form.value}{tag})"


def classical_fidelity(p, q):
    """Bhattacharyya coefficient ``sum_i sqrt(p_i q_i)``.

    >>> classical_fidelity([0.25, 0.75], [0.75, 0.25])  # doctest: +ELLIPSIS
    0.8660254...
    """
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    if p.shape != q.shape:
        raise InputError(f"length mismatch: {p.shape[0]} vs {q.shape[0]}")
    if np.any(p < 0) or np.any(q < 0):
        raise InputError("classical fidelity needs nonnegative entries")
    return float(np.sum(np.sqrt(p * q)))


def _psd_pair(P, Q):
    sp = la.psd_decompose(P, "P")
    sq = la.psd_decompose(Q, "Q")
    la.check_same_dim(sp.eigenvectors, sq.eigenvectors)
    return sp, sq


def uhlmann(P, Q):
    """``Tr sqrt(P^{1/2} Q P^{1/2})``; rank-deficient inputs are fine."""
    sp, sq = _psd_pair(P, Q)
    ph = sp.apply(np.sqrt)
    w = la._eigh(la.hermitian_part(ph @ sq.reconstruct() @ ph)).eigenvalues
    return float(np.sum(np.sqrt(np.clip(w, 0.0, None))))


def holevo(P, Q):
    """``Tr[P^{1/2} Q^{1/2}]``."""
    sp, sq = _psd_pair(P, Q)
    return float(np.real(np.vdot(sp.apply(np.sqrt), sq.apply(np.sqrt))))


def matsumoto(P, Q):
    """``Tr[P # Q]`` with ``#`` the matrix geometric mean (PD inputs)."""
    return float(np.trace(la.geometric_mean(P, Q)).real)


def log_euclidean(P, Q):
    """``Tr exp((log P + log Q) / 2)`` for strictly PD inputs."""
    P = la.as_positive(P, name="P")
    Q = la.as_positive(Q, name="Q")
    la.check_same_dim(P, Q)
    H = la.hermitian_part(0.5 * (la.logm(P) + la.logm(Q)))
    return float(np.sum(np.exp(la.spectral_decompose(H).eigenvalues)))


def z_fidelity(P, Q, z):
    """``Tr[(P^{1/2z} Q^{1/2z})^z]`` evaluated through a PSD similarity.

    ``z = 1`` is Holevo, ``z = 1/2`` is Uhlmann.
    """
    if not (np.isfinite(z) and z > 0):
        raise DomainError(f"z must be positive, got {z!r}")
    sp, sq = _psd_pair(P, Q)
    a = 1.0 / (4.0 * z)
    pa = sp.apply(lambda w: w ** a)
    qa = sq.apply(lambda w: w ** (2.0 * a))
    w = la._eigh(la.hermitian_part(pa @ qa @ pa)).eigenvalues
    return float(np.sum(np.clip(w, 0.0, None) ** z))


NAMED = {
    "uhlmann": uhlmann,
    "holevo": holevo,
    "matsumoto": matsumoto,
    "log-euclidean": log_euclidean,
}


def hellinger_quantity(P, Q, fidelity_fn=uhlmann):
    """``Tr[P + Q] - 2 F(P, Q)`` for a named fidelity ``F``."""
    if isinstance(fidelity_fn, str):
        fidelity_fn = NAMED[fidelity_fn]
    P = la.as_hermitian(P, "P")
    Q = la.as_hermitian(Q, "Q")
    return float(np.trace(P).real + np.trace(Q).real - 2.0 * fidelity_fn(P, Q))


# -- generalized fidelity ---------------------------------------------------


class _Base:
    """Cached spectral data of a PD base ``R``."""

    def __init__(self, R):
        self.s = la.positive_decompose(R, name="R")
        self.R = self.s.reconstruct()
        self.half = self.s.apply(np.sqrt)
        self.inv = self.s.apply(lambda w: 1.0 / w)

    def dressed_sqrt(self, s):
        """``sqrt(R^{1/2} X R^{1/2})`` for X given by its decomposition ``s``."""
        return la.psd_sqrtm(self.half @ s.reconstruct() @ self.half)


def polar_unitaries(P, Q, R):
    """Return ``(U_P, U_Q)`` with ``U_X = Pol(X^{1/2} R^{1/2})``."""
    base = _Base(R)
    sp = la.positive_decompose(P, name="P")
    sq = la.positive_decompose(Q, name="Q")
    la.check_same_dim(base.R, sp.eigenvectors, sq.eigenvectors)
    return (
        la.polar_factor(sp.apply(np.sqrt) @ base.half),
        la.polar_factor(sq.apply(np.sqrt) @ base.half),
    )


def _definition(sp, sq, base):
    return np.trace(base.dressed_sqrt(sp) @ base.inv @ base.dressed_sqrt(sq))


def _polar(sp, sq, base):
    ph = sp.apply(np.sqrt)
    qh = sq.apply(np.sqrt)
    up = la.polar_factor(ph @ base.half)
    uq = la.polar_factor(qh @ base.half)
    return np.trace(qh @ uq @ up.conj().T @ ph)


def _geomean(sp, sq, base):
    Rinv = base.inv
    gq = la.geometric_mean(Rinv, sq.reconstruct())
    gp = la.geometric_mean(Rinv, sp.reconstruct())
    return np.trace(gq @ base.R @ gp)


_FORMS = {
    FidelityForm.DEFINITION: _definition,
    FidelityForm.POLAR_UNITARY: _polar,
    FidelityForm.GEOMETRIC_MEAN: _geomean,
}


def generalized_fidelity(P, Q, R, form="definition", base_tag=None):
    """Generalized fidelity ``F_R(P, Q)`` at the PD base ``R``.

    Parameters
    ----------
    P, Q : array_like
        Positive semidefinite, same dimension as ``R``.
    R : array_like
        Positive definite base.
    form : {"definition", "polar", "geomean"}
        Which of the three equivalent formulas to evaluate.  The polar and
        geometric-mean forms need PD ``P`` and ``Q``; for rank-deficient
        inputs the definition form is used instead.

    Returns
    -------
    FidelityValue
        Complex value; ``.form`` records the formula actually used.
    """
    form = FidelityForm.parse(form)
    base = _Base(R)
    sp, sq = _psd_pair(P, Q)
    la.check_same_dim(base.R, sp.eigenvectors)
    if form is not FidelityForm.DEFINITION and not (
        la.is_positive_definite(sp) and la.is_positive_definite(sq)
    ):
        form = FidelityForm.DEFINITION
    return FidelityValue(_FORMS[form](sp, sq, base), form, base_tag)


def generalized_fidelity_pure(psi, phi, R):
    """Generalized fidelity between the pure states ``|psi><psi|`` and ``|phi><phi|``.

    Closed form ``<psi,phi> <phi,R psi> / (sqrt<psi,R psi> sqrt<phi,R phi>)``.
    """
    psi = np.asarray(psi, dtype=complex).ravel()
    phi = np.asarray(phi, dtype=complex).ravel()
    for name, v in (("psi", psi), ("phi", phi)):
        if abs(np.linalg.norm(v) - 1.0) > 1e-10:
            raise InputError(f"{name} must be a unit vector")
    R = la.as_positive(R, name="R")
    la.check_same_dim(R, np.empty((psi.shape[0], 1)), np.empty((phi.shape[0], 1)))
    fp = np.sqrt(np.vdot(psi, R @ psi).real)
    fq = np.sqrt(np.vdot(phi, R @ phi).real)
    return complex(np.vdot(psi, phi) * np.vdot(phi, R @ psi) / (fp * fq))


def generalized_bures_sq(P, Q, R, form="definition"):
    """``Tr[P + Q] - 2 Re F_R(P, Q)``, clipped at 0 against round-off.

    ``Re F_R`` is averaged over both argument orders, which makes the
    result exactly symmetric in ``P`` and ``Q`` in floating point.
    """
    form = FidelityForm.parse(form)
    if form is FidelityForm.DEFINITION:
        base = _Base(R)
        sp, sq = _psd_pair(P, Q)
        la.check_same_dim(base.R, sp.eigenvectors)
        A, B = base.dressed_sqrt(sp), base.dressed_sqrt(sq)
        f1 = np.trace(A @ base.inv @ B).real
        f2 = np.trace(B @ base.inv @ A).real
        tr = np.sum(sp.eigenvalues) + np.sum(sq.eigenvalues)
    else:
        f1 = generalized_fidelity(P, Q, R, form).real
        f2 = generalized_fidelity(Q, P, R, form).real
        tr = np.trace(la.as_hermitian(P, "P")).real + np.trace(la.as_hermitian(Q, "Q")).real
    return max(0.0, float(tr - (f1 + f2)))


def generalized_bures(P, Q, R, form="definition"):
    """Generalized Bures distance ``b_R = sqrt(B_R)``.

    For PD ``P, Q`` it is taken from the Frobenius form, which avoids the
    cancellation in ``Tr[P+Q] - 2 Re F_R`` near ``P = Q`` (and is exactly 0
    there).  Rank-deficient inputs use :func:`generalized_bures_sq`.
    """
    try:
        return float(np.sqrt(frobenius_bures_sq(P, Q, R)))
    except PositivityError:
        return float(np.sqrt(generalized_bures_sq(P, Q, R, form)))


def frobenius_bures_sq(P, Q, R):
    """Same quantity as :func:`generalized_bures_sq` as ``||U_P* P^{1/2} - U_Q* Q^{1/2}||_F^2``."""
    up, uq = polar_unitaries(P, Q, R)
    ph = la.sqrtm(P)
    qh = la.sqrtm(Q)
    return float(np.sum(np.abs(up.conj().T @ ph - uq.conj().T @ qh) ** 2))


def unitary_factor(P, Q, R):
    """``U_Q U_P*``; its determinant is +1."""
    up, uq = polar_unitaries(P, Q, R)
    return uq @ up.conj().T


def polar_fidelity(P, Q, x):
    """Average ``(F_{P^x}(P,Q) + F_{Q^x}(P,Q)) / 2``, via its closed form.

    Evaluated as ``Tr[P^{1/2} (U_x + V_x)/2 Q^{1/2}]`` with
    ``U_x = Pol(P^{x/2} Q^{1/2})`` and ``V_x = Pol(P^{1/2} Q^{x/2})``.
    ``x = 1, 0, -1`` give Uhlmann, Holevo and Matsumoto.
    """
    if not np.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")
    sp = la.positive_decompose(P, name="P")
    sq = la.positive_decompose(Q, name="Q")
    la.check_same_dim(sp.eigenvectors, sq.eigenvectors)
    ph, qh = sp.apply(np.sqrt), sq.apply(np.sqrt)
    ux = la.polar_factor(sp.apply(lambda w: w ** (x / 2.0)) @ qh)
    vx = la.polar_factor(ph @ sq.apply(lambda w: w ** (x / 2.0)))
    return float(np.trace(ph @ (0.5 * (ux + vx)) @ qh).real)


def polar_fidelity_average(P, Q, x):
    """:func:`polar_fidelity` computed from its two generalized fidelities."""
    fp = generalized_fidelity(P, Q, la.powm(P, x))
    fq = generalized_fidelity(P, Q, la.powm(Q, x))
    return complex(0.5 * (complex(fp) + complex(fq)))


def _ensemble(ensemble):
    return ensemble if isinstance(ensemble, Ensemble) else Ensemble(*ensemble)


def mean_unitary_factor(P, Q, ensemble):
    """``sum_i mu_i U_Q^{(i)} U_P^{(i)*}`` over the bases of ``ensemble``."""
    ens = _ensemble(ensemble)
    return sum(mu * unitary_factor(P, Q, R) for mu, R in zip(ens.weights, ens.bases))


def interior_fidelity(P, Q, ensemble):
    """Weighted average ``sum_i mu_i F_{R_i}(P, Q)`` over a base ensemble.

    ``ensemble`` is an :class:`Ensemble` or a ``(bases, weights)`` pair.
    """
    ens = _ensemble(ensemble)
    total = sum(mu * complex(generalized_fidelity(P, Q, R)) for mu, R in zip(ens.weights, ens.bases))
    return complex(total)


def interior_fidelity_unitary(P, Q, ensemble):
    """:func:`interior_fidelity` as ``Tr[Q^{1/2} V P^{1/2}]`` with V the mean unitary factor."""
    V = mean_unitary_factor(P, Q, ensemble)
    return complex(np.trace(la.sqrtm(Q) @ V @ la.sqrtm(P)))
