# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi eigensolver for dense complex Hermitian matrices."""

import numpy as np

from libc.math cimport fabs, hypot, sqrt


cdef long _sweep(double complex[:, ::1] A, double complex[:, ::1] V,
                 double tol, long max_rotations) noexcept nogil:
    """Rotate until no off-diagonal entry exceeds its threshold.

    Returns the rotation count, or -1 when ``max_rotations`` is exceeded.
    """
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t p, q, k
    cdef long rotations = 0
    cdef bint rotated
    cdef double r, app, aqq, tau, t, c, s, thresh, fro = 0.0, floor
    cdef double complex e, em, x, y

    for p in range(n):
        for q in range(n):
            fro += A[p, q].real * A[p, q].real + A[p, q].imag * A[p, q].imag
    fro = sqrt(fro)
    floor = tol * tol * fro

    while True:
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                x = A[p, q]
                r = hypot(x.real, x.imag)
                app = A[p, p].real
                aqq = A[q, q].real
                thresh = tol * sqrt(fabs(app) * fabs(aqq))
                if thresh < floor:
                    thresh = floor
                if r <= thresh:
                    continue
                if rotations >= max_rotations:
                    return -1
                rotations += 1
                rotated = True
                e = x / r
                em = e.conjugate()
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    x = A[k, p]
                    y = A[k, q]
                    A[k, p] = c * x - s * em * y
                    A[k, q] = s * x + c * em * y
                for k in range(n):
                    x = A[p, k]
                    y = A[q, k]
                    A[p, k] = c * x - s * e * y
                    A[q, k] = s * x + c * e * y
                for k in range(n):
                    x = V[k, p]
                    y = V[k, q]
                    V[k, p] = c * x - s * em * y
                    V[k, q] = s * x + c * em * y
                A[p, p] = app - t * r
                A[q, q] = aqq + t * r
                A[p, q] = 0.0
                A[q, p] = 0.0
        if not rotated:
            return rotations


def jacobi_eigh(a_in, double tol, long max_rotations):
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors, rotations)`` with eigenvalues in
    the order they appear on the final diagonal (unsorted).  Raises
    ``RuntimeError`` when ``max_rotations`` is exceeded.  The sweep runs
    without the GIL.
    """
    a = np.array(a_in, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] A = a
    cdef double complex[:, ::1] V = v
    cdef long rotations
    with nogil:
        rotations = _sweep(A, V, tol, max_rotations)
    if rotations < 0:
        raise RuntimeError(
            f"Jacobi iteration did not converge within {max_rotations} rotations"
        )
    return a.diagonal().real.copy(), v, rotations
