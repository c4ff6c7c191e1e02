"""Matrix and ensemble JSON.

Matrix: ``{"d": n, "re": [[...]], "im": [[...]]}``, row-major, ``im``
optional.  Ensemble: ``{"weights": [...], "states": [<matrix>, ...]}``.
"""

import json

import numpy as np

from .ensemble import Ensemble
from .errors import InputError


def matrix_from_dict(obj):
    if not isinstance(obj, dict) or "re" not in obj:
        raise InputError("matrix JSON needs at least a 're' field")
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float) if obj.get("im") is not None else np.zeros_like(re)
    except (TypeError, ValueError) as exc:
        raise InputError(f"matrix entries must be numeric arrays: {exc}") from exc
    if re.ndim != 2 or re.shape[0] != re.shape[1] or re.shape != im.shape:
        raise InputError(f"matrix must be square with matching re/im, got {re.shape} and {im.shape}")
    d = obj.get("d", re.shape[0])
    if not isinstance(d, int) or d != re.shape[0]:
        raise InputError(f"'d'={d!r} does not match the {re.shape[0]}x{re.shape[0]} entries")
    return re + 1j * im


def matrix_to_dict(A):
    A = np.asarray(A, dtype=complex)
    return {"d": int(A.shape[0]), "re": A.real.tolist(), "im": A.imag.tolist()}


def ensemble_from_dict(obj):
    if not isinstance(obj, dict) or "states" not in obj:
        raise InputError("ensemble JSON needs a 'states' field")
    states = [matrix_from_dict(s) for s in obj["states"]]
    return Ensemble(states, obj.get("weights"))


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def load_matrix(path):
    return matrix_from_dict(_load_json(path))


def load_ensemble(path):
    return ensemble_from_dict(_load_json(path))


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return matrix_to_dict(obj) if obj.ndim == 2 else obj.tolist()
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def dumps(obj):
    """JSON text; floats use the shortest repr that round-trips exactly."""
    return json.dumps(_plain(obj), indent=2)


def fmt(x):
    """Format a float with 17 significant digits."""
    return format(float(x), ".17g")
