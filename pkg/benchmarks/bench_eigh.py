"""Compare the compiled and pure-Python Jacobi eigensolvers.

Times both kernels on random Hermitian matrices, with ``numpy.linalg.eigh``
as an accuracy and speed reference, and a full generalized-fidelity
evaluation under each backend.

    python3 benchmarks/bench_eigh.py [--dims 2 4 8 16] [--repeat 50]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from bures_geom import _backend
from bures_geom.linalg import EPS, ginibre, random_generator


def _time(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _fidelity_timing(backend, d, repeat):
    code = (
        "import time, numpy as np\n"
        "from bures_geom import linalg as la, fidelity\n"
        f"P, Q, R = (la.random_positive({d}, 7, trial=k) for k in range(3))\n"
        "best = 1e9\n"
        f"for _ in range({repeat}):\n"
        "    t0 = time.perf_counter(); fidelity.generalized_fidelity(P, Q, R)\n"
        "    best = min(best, time.perf_counter() - t0)\n"
        "print(best)\n"
    )
    env = dict(os.environ, BURES_GEOM_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dims", type=int, nargs="+", default=[2, 4, 8, 16])
    parser.add_argument("--repeat", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = _backend.available_backends()
    print(f"active backend: {_backend.BACKEND}; available: {', '.join(backends)}")
    print(f"{'d':>4} {'kernel':>9} {'time [us]':>12} {'speedup':>9} {'max |dw|':>10} {'resid':>10} {'rotations':>10}")
    for d in args.dims:
        G = ginibre(d, random_generator(args.seed, d))
        H = 0.5 * (G + G.conj().T)
        w_ref = np.linalg.eigvalsh(H)
        t_np = _time(lambda: np.linalg.eigh(H), args.repeat)
        t_py = None
        for name in sorted(backends, key=lambda n: n != "python"):
            kernel = _backend.get_kernel(name)
            w, V, rot = kernel(H, EPS, 30 * d * d)
            err = np.max(np.abs(np.sort(w) - w_ref))
            resid = np.linalg.norm(H @ V - V * w) / np.linalg.norm(H)
            t = _time(lambda: kernel(H, EPS, 30 * d * d), args.repeat)
            t_py = t if name == "python" else t_py
            speedup = t_py / t if t_py else 1.0
            print(f"{d:4d} {name:>9} {t * 1e6:12.1f} {speedup:9.1f} {err:10.1e} {resid:10.1e} {rot:10d}")
        print(f"{d:4d} {'numpy':>9} {t_np * 1e6:12.1f} {t_py / t_np:9.1f}")

    print("\ngeneralized fidelity, one call (best of repeats)")
    for d in args.dims:
        row = [f"{b}={_fidelity_timing(b, d, args.repeat) * 1e6:.0f}us" for b in backends]
        print(f"  d={d:<3d} " + "  ".join(row))


if __name__ == "__main__":
    main()
