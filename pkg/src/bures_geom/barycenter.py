"""Bures-Wasserstein barycenters and multivariate fidelities.

The barycenter of weighted states ``P_i`` is the fixed point of

    sigma = sum_i mu_i sqrt(sigma^{1/2} P_i sigma^{1/2}),

found by Picard iteration from the Euclidean mixture.  The total-fidelity
maximizer over density matrices uses the same map followed by trace
normalization.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .ensemble import Ensemble
from .errors import ConvergenceError
from .fidelity import generalized_fidelity, uhlmann


@dataclass(frozen=True)
class BarycenterResult:
    sigma: np.ndarray
    iterations: int
    residual: float
    total_fidelity: float

    def to_dict(self):
        return {
            "sigma": self.sigma,
            "iterations": self.iterations,
            "residual": self.residual,
            "total_fidelity": self.total_fidelity,
        }


def _ensemble(ensemble):
    if isinstance(ensemble, Ensemble):
        return ensemble
    if isinstance(ensemble, tuple) and len(ensemble) == 2 and not hasattr(ensemble[1], "shape"):
        return Ensemble(*ensemble)
    return Ensemble(ensemble)


def total_fidelity(sigma, ensemble):
    """Unweighted sum ``sum_i F^U(rho_i, sigma)`` over the ensemble states."""
    ens = _ensemble(ensemble)
    return float(sum(uhlmann(rho, sigma) for rho in ens.states))


def _fixed_point_map(sigma, states, weights):
    sh = la.psd_sqrtm(sigma)
    return la.hermitian_part(
        sum(mu * la.psd_sqrtm(sh @ P @ sh) for mu, P in zip(weights, states))
    )


def bw_barycenter(ensemble, tol=1e-10, max_iter=10_000, normalize="weighted"):
    """Fixed-point iteration for the BW barycenter.

    Parameters
    ----------
    ensemble : Ensemble or sequence of matrices
        States and weights; a bare sequence gets uniform weights.
    tol : float
        Stop once ``||sigma_new - sigma||_F / ||sigma||_F <= tol``.
    max_iter : int
    normalize : {"weighted", "fidelity"}
        ``"weighted"`` is the plain barycenter.  ``"fidelity"`` rescales each
        iterate to unit trace, giving the maximizer of the total fidelity
        over density matrices.

    Returns
    -------
    BarycenterResult

    Raises
    ------
    ConvergenceError
        After ``max_iter`` iterations, carrying the last residual.
    """
    if normalize not in ("weighted", "fidelity"):
        raise ValueError(f"normalize must be 'weighted' or 'fidelity', got {normalize!r}")
    if not tol > 0:
        raise ValueError("tol must be positive")
    ens = _ensemble(ensemble)
    states = [la.as_positive(P, name=f"state {i}") for i, P in enumerate(ens.states)]
    weights = ens.weights
    sigma = la.hermitian_part(sum(mu * P for mu, P in zip(weights, states)))
    if normalize == "fidelity":
        sigma = sigma / np.trace(sigma).real
    residual = np.inf
    for it in range(1, max_iter + 1):
        new = _fixed_point_map(sigma, states, weights)
        if normalize == "fidelity":
            new = new / np.trace(new).real
        residual = float(np.linalg.norm(new - sigma) / np.linalg.norm(sigma))
        sigma = new
        if residual <= tol:
            return BarycenterResult(sigma, it, residual, total_fidelity(sigma, ens))
    raise ConvergenceError(
        f"barycenter iteration did not converge in {max_iter} steps (residual {residual:.3e})",
        residual=residual,
        iterations=max_iter,
    )


def multivariate_fidelity(states):
    """Mean Uhlmann fidelity over ordered pairs of distinct states."""
    states = list(states)
    n = len(states)
    if n < 2:
        raise ValueError("need at least two states")
    total = sum(uhlmann(states[i], states[j]) for i in range(n) for j in range(i + 1, n))
    return 2.0 * total / (n * (n - 1))


def generalized_multivariate_fidelity(states, sigma):
    """Mean of ``F_sigma(rho_i, rho_j)`` over ordered pairs ``i != j``."""
    states = list(states)
    n = len(states)
    if n < 2:
        raise ValueError("need at least two states")
    total = sum(
        complex(generalized_fidelity(states[i], states[j], sigma))
        for i in range(n)
        for j in range(n)
        if i != j
    )
    return complex(total / (n * (n - 1)))


@dataclass(frozen=True)
class BarycenterIdentityReport:
    f_sigma: float
    double_sum: complex
    residual: float
    passed: bool
    barycenter: BarycenterResult


def check_barycenter_identity(states, tol=1e-6):
    """Check ``f(sigma)^2 = sum_{i,j} F_sigma(rho_i, rho_j)`` at the fidelity maximizer.

    ``residual`` is relative to ``f(sigma)^2`` and includes the imaginary
    part of the double sum.
    """
    states = list(states)
    res = bw_barycenter(Ensemble(states), normalize="fidelity")
    sigma = res.sigma
    f = total_fidelity(sigma, Ensemble(states))
    n = len(states)
    # diagonal terms are Tr rho_i exactly, summed separately from the off-diagonal pairs
    diag = sum(complex(generalized_fidelity(states[i], states[i], sigma)) for i in range(n))
    off = sum(
        complex(generalized_fidelity(states[i], states[j], sigma))
        for i in range(n)
        for j in range(n)
        if i != j
    )
    double_sum = diag + off
    residual = abs(f * f - double_sum) / (f * f)
    return BarycenterIdentityReport(f, complex(double_sum), float(residual), residual <= tol, res)
