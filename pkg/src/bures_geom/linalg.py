"""Dense Hermitian linear algebra on top of the Jacobi eigensolver.

Every matrix function here goes through :func:`spectral_decompose`, so all
square roots are principal square roots of Hermitian positive (semi)definite
matrices.  Matrices are plain complex ``numpy`` arrays; validation happens at
the public entry points.
"""

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DimensionError, DomainError, InputError, PositivityError

HERMITIAN_ATOL = 1e-12
PD_REL_FLOOR = 1e-12
EPS = np.finfo(float).eps


class RankDeficiencyError(DomainError):
    """Polar factor requested for a (numerically) singular matrix."""


def dagger(A):
    return A.conj().T


def hermitian_part(A):
    return 0.5 * (A + A.conj().T)


def as_square(A, name="matrix"):
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise InputError(f"{name} must be a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InputError(f"{name} has non-finite entries")
    return A


def as_hermitian(H, name="matrix"):
    """Validate Hermiticity and return the exactly symmetrized matrix."""
    H = as_square(H, name)
    scale = max(1.0, float(np.max(np.abs(H))))
    if np.max(np.abs(H - H.conj().T)) > HERMITIAN_ATOL * scale:
        raise InputError(f"{name} is not Hermitian")
    return hermitian_part(H)


def check_same_dim(*mats):
    dims = {m.shape[0] for m in mats}
    if len(dims) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(dims)}")
    return dims.pop()


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self):
        return self.eigenvalues.shape[0]

    def apply(self, fn):
        """``V diag(fn(w)) V*`` for a vectorized scalar function ``fn``."""
        V = self.eigenvectors
        return (V * fn(self.eigenvalues)) @ V.conj().T

    def reconstruct(self):
        return self.apply(lambda w: w)


def _eigh(H):
    n = H.shape[0]
    w, V, _ = _backend.jacobi_eigh(H, EPS, 30 * n * n)
    order = np.argsort(w, kind="stable")
    return SpectralDecomposition(w[order], np.ascontiguousarray(V[:, order]))


def spectral_decompose(H):
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    H : array_like, shape (d, d)
        Hermitian matrix.

    Returns
    -------
    SpectralDecomposition
        Eigenvalues ascending, eigenvectors as unitary columns.

    Raises
    ------
    ConvergenceError
        If the Jacobi sweep exceeds ``30 d**2`` rotations.
    """
    from .errors import ConvergenceError

    H = as_hermitian(H)
    try:
        return _eigh(H)
    except RuntimeError as exc:
        raise ConvergenceError(str(exc)) from exc


def positive_decompose(P, floor=None, name="matrix"):
    """Decompose ``P`` and check it is strictly positive definite.

    ``floor`` defaults to ``1e-12 * lambda_max``; eigenvalues at or below it
    are rejected.
    """
    s = spectral_decompose(as_hermitian(P, name))
    w = s.eigenvalues
    if floor is None:
        floor = PD_REL_FLOOR * max(abs(w[-1]), np.finfo(float).tiny)
    if w[0] <= floor or w[-1] <= 0:
        raise PositivityError(
            f"{name} is not positive definite (min eigenvalue {w[0]:.3e}, floor {floor:.3e})"
        )
    return s


def psd_decompose(P, name="matrix", rtol=1e-10):
    """Decompose a positive semidefinite ``P``; eigenvalues are clipped at 0.

    Eigenvalues below ``-rtol * max(1, lambda_max)`` are rejected.
    """
    s = spectral_decompose(as_hermitian(P, name))
    w = s.eigenvalues
    if w[0] < -rtol * max(1.0, abs(w[-1])):
        raise PositivityError(f"{name} is not positive semidefinite (min eigenvalue {w[0]:.3e})")
    return SpectralDecomposition(clip_spectrum(w), s.eigenvectors)


def is_positive_definite(s, floor=None):
    w = s.eigenvalues
    if floor is None:
        floor = PD_REL_FLOOR * max(abs(w[-1]), np.finfo(float).tiny)
    return bool(w[0] > floor)


def as_positive(P, floor=None, name="matrix"):
    positive_decompose(P, floor, name)
    return hermitian_part(as_square(P, name))


_SPECTRAL_FNS = {
    "sqrt": np.sqrt,
    "inv_sqrt": lambda w: 1.0 / np.sqrt(w),
    "log": np.log,
    "exp": np.exp,
    "inv": lambda w: 1.0 / w,
}


def apply_spectral_fn(P, fn, power=None):
    """Apply a scalar function to a Hermitian matrix through its spectrum.

    ``fn`` is one of ``"sqrt"``, ``"inv_sqrt"``, ``"log"``, ``"exp"``,
    ``"inv"`` or ``"pow"`` (with ``power``).  All but ``"exp"`` require a
    positive definite argument.
    """
    if fn == "exp":
        return spectral_decompose(P).apply(np.exp)
    s = positive_decompose(P)
    if fn == "pow":
        if power is None or not np.isfinite(power):
            raise DomainError(f"pow needs a finite exponent, got {power!r}")
        return s.apply(lambda w: w ** power)
    try:
        f = _SPECTRAL_FNS[fn]
    except KeyError:
        raise ValueError(f"unknown spectral function {fn!r}") from None
    return s.apply(f)


def sqrtm(P):
    return apply_spectral_fn(P, "sqrt")


def invsqrtm(P):
    return apply_spectral_fn(P, "inv_sqrt")


def logm(P):
    return apply_spectral_fn(P, "log")


def expm(H):
    return apply_spectral_fn(H, "exp")


def invm(P):
    return apply_spectral_fn(P, "inv")


def powm(P, s):
    return apply_spectral_fn(P, "pow", s)


def clip_spectrum(w):
    """Zero eigenvalues below the resolution ``8 d eps max|w|`` of a PSD matrix."""
    cut = 8.0 * w.shape[0] * EPS * np.max(np.abs(w))
    return np.where(w > cut, w, 0.0)


def psd_sqrtm(H):
    """Square root of a Hermitian PSD matrix; round-off eigenvalues count as 0."""
    return _eigh(hermitian_part(H)).apply(lambda w: np.sqrt(clip_spectrum(w)))


def psd_powm(H, s):
    return _eigh(hermitian_part(H)).apply(lambda w: clip_spectrum(w) ** s)


def polar_factor(A, tol=1e-12):
    """Unitary polar factor ``A (A* A)^{-1/2}`` of an invertible matrix.

    Raises
    ------
    RankDeficiencyError
        If the smallest singular value is below ``tol`` times the largest.
    """
    A = as_square(A)
    s = _eigh(hermitian_part(A.conj().T @ A))
    w = s.eigenvalues
    if w[-1] <= 0 or w[0] <= (tol ** 2) * w[-1]:
        smin = np.sqrt(max(w[0], 0.0))
        raise RankDeficiencyError(f"matrix is singular to tolerance (sigma_min={smin:.3e})")
    return A @ s.apply(lambda x: 1.0 / np.sqrt(x))


def _sqrt_pair(s):
    return s.apply(np.sqrt), s.apply(lambda w: 1.0 / np.sqrt(w))


def weighted_geometric_mean(A, B, alpha):
    """Point ``A^{1/2} (A^{-1/2} B A^{-1/2})^alpha A^{1/2}`` of the AI geodesic."""
    if not np.isfinite(alpha):
        raise DomainError(f"alpha must be finite, got {alpha!r}")
    sa = positive_decompose(A, name="A")
    B = as_positive(B, name="B")
    check_same_dim(sa.eigenvectors, B)
    a, ai = _sqrt_pair(sa)
    inner = _eigh(hermitian_part(ai @ B @ ai))
    return hermitian_part(a @ inner.apply(lambda w: np.clip(w, 0.0, None) ** alpha) @ a)


def geometric_mean(A, B):
    """Matrix geometric mean ``A # B``; the unique PD solution of ``B = X A^{-1} X``."""
    return weighted_geometric_mean(A, B, 0.5)


def symmetrized_division(A, B):
    """``B^{-1/2} A B^{-1/2}`` for Hermitian ``A`` and positive definite ``B``."""
    A = as_hermitian(A, "A")
    sb = positive_decompose(B, name="B")
    check_same_dim(A, sb.eigenvectors)
    bi = sb.apply(lambda w: 1.0 / np.sqrt(w))
    return hermitian_part(bi @ A @ bi)


def lyapunov_solve(P, X, decomposition=None):
    """Solve ``Y P + P Y = X`` for ``Y`` (the operator written L_P in the docs).

    Works in the eigenbasis of ``P``: ``Y~_ij = X~_ij / (l_i + l_j)``.
    A precomputed :class:`SpectralDecomposition` of ``P`` may be passed.
    """
    s = decomposition if decomposition is not None else positive_decompose(P, name="P")
    X = as_hermitian(X, "X")
    check_same_dim(s.eigenvectors, X)
    V, w = s.eigenvectors, s.eigenvalues
    Xt = V.conj().T @ X @ V
    Yt = Xt / (w[:, None] + w[None, :])
    return hermitian_part(V @ Yt @ V.conj().T)


def lyapunov_apply(P, Y):
    """Inverse of :func:`lyapunov_solve`: ``Y P + P Y``."""
    return Y @ P + P @ Y


def random_generator(seed, trial=0):
    """Counter-based generator keyed by ``(seed, trial)``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(trial)])))


def ginibre(d, rng):
    return (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)


def positive_from_rng(rng, d, cond_cap=1e4):
    """Draw ``G G* + eps I`` from ``rng``; see :func:`random_positive`."""
    if d < 1:
        raise DimensionError(f"d must be >= 1, got {d}")
    if not cond_cap >= 1:
        raise DomainError(f"cond_cap must be >= 1, got {cond_cap}")
    G = ginibre(d, rng)
    P = hermitian_part(G @ G.conj().T)
    if cond_cap == 1:
        return np.trace(P).real / d * np.eye(d, dtype=complex)
    w = _eigh(P).eigenvalues
    target = cond_cap * (1.0 - 1e-9)
    eps = max(0.0, (w[-1] - target * w[0]) / (target - 1.0))
    return P + eps * np.eye(d)


def random_positive(d, seed, cond_cap=1e4, trial=0):
    """Random positive definite matrix ``G G* + eps I`` with condition <= ``cond_cap``.

    ``G`` has i.i.d. standard complex normal entries and ``eps`` is the
    smallest shift bringing the condition number under the cap (zero when
    already below it).  Output depends only on ``(seed, trial)``.
    """
    return positive_from_rng(random_generator(seed, trial), d, cond_cap)


def random_density(d, seed, cond_cap=1e4, trial=0):
    P = random_positive(d, seed, cond_cap, trial)
    return P / np.trace(P).real


def density_from_rng(rng, d, cond_cap=1e4):
    P = positive_from_rng(rng, d, cond_cap)
    return P / np.trace(P).real


def random_unitary(d, seed, trial=0):
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    return unitary_from_rng(random_generator(seed, trial), d)


def unitary_from_rng(rng, d):
    G = ginibre(d, rng)
    Q, R = np.linalg.qr(G)
    phases = np.diagonal(R) / np.abs(np.diagonal(R))
    return Q * phases
