"""Eigensolver backend selection.

The compiled Jacobi kernel is used when importable; otherwise the
pure-Python twin.  ``BURES_GEOM_BACKEND`` forces a choice
(``compiled`` or ``python``).
"""

import os

from . import _jacobi_py

try:
    from . import _jacobi as _compiled
except ImportError:  # extension not built
    _compiled = None

_KERNELS = {"python": _jacobi_py.jacobi_eigh}
if _compiled is not None:
    _KERNELS["compiled"] = _compiled.jacobi_eigh


def _select(name):
    if name == "auto":
        name = "compiled" if "compiled" in _KERNELS else "python"
    if name not in _KERNELS:
        raise ImportError(
            f"eigensolver backend {name!r} unavailable; have {sorted(_KERNELS)}"
        )
    return name


BACKEND = _select(os.environ.get("BURES_GEOM_BACKEND", "auto").strip().lower())
jacobi_eigh = _KERNELS[BACKEND]


def available_backends():
    return sorted(_KERNELS)


def get_kernel(name):
    """Return the raw kernel for ``name`` (used by the benchmark and tests)."""
    return _KERNELS[_select(name)]
