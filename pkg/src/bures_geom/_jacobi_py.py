"""Pure-Python twin of the compiled Jacobi kernel.

Same rotation sequence and thresholds as ``_jacobi.pyx``; used when the
extension is not built or ``BURES_GEOM_BACKEND=python`` is set.
"""

import math

import numpy as np


def jacobi_eigh(a_in, tol, max_rotations):
    a = np.array(a_in, dtype=np.complex128, order="C", copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    rotations = 0
    floor = tol * tol * float(np.linalg.norm(a))

    while True:
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                x = a[p, q]
                r = abs(x)
                app = a[p, p].real
                aqq = a[q, q].real
                if r <= max(tol * math.sqrt(abs(app) * abs(aqq)), floor):
                    continue
                if rotations >= max_rotations:
                    raise RuntimeError(
                        f"Jacobi iteration did not converge within {max_rotations} rotations"
                    )
                rotations += 1
                rotated = True
                e = x / r
                em = e.conjugate()
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * em * col_q
                a[:, q] = s * col_p + c * em * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * e * row_q
                a[q, :] = s * row_p + c * e * row_q
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * em * vq
                v[:, q] = s * vp + c * em * vq

                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                a[p, q] = 0.0
                a[q, p] = 0.0
        if not rotated:
            break

    return np.ascontiguousarray(a.diagonal().real), v, rotations
