"""Run every randomized check and collect a JSON-serializable report.

Trial ``k`` of a check draws its inputs from a Philox stream keyed by
``(seed, crc32(check name), k)`` and uses dimension ``dims[k % len(dims)]``,
so reports are reproducible and independent of thread count.
"""

import os
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .. import linalg as la
from ..barycenter import bw_barycenter, check_barycenter_identity
from ..divergence import NAMED as NAMED_DIVERGENCES
from ..divergence import (
    belavkin_staszewski,
    classical_renyi,
    generalized_renyi,
    max_relative,
    recovery_bases,
    umegaki,
)
from ..ensemble import Ensemble
from ..fidelity import (
    PROPERTY_TOLERANCES,
    generalized_bures,
    generalized_bures_sq,
    generalized_fidelity,
    interior_fidelity,
    interior_fidelity_unitary,
    mean_unitary_factor,
    polar_fidelity,
    polar_fidelity_average,
    uhlmann,
)
from ..manifold import AI, BW, EUCLIDEAN, exp_map, geodesic_point, inner_product, log_map, squared_distance
from . import properties, witnesses
from .block import build_block_system, extract_from_block, objective
from .checks import check_su_d, monotonicity_scan
from .paths import PATH_IDS, check_path
from .purification import check_purification

DEFAULT_DIMS = (2, 3, 4, 6, 8)
DEFAULT_TRIALS = 200
DEFAULT_SEED = 42
COND_CAP = 1e6
DIVERGENCE_COND_CAP = 1e2
ALPHAS = (0.3, 0.7, 2.0, 3.0)
DISTANCE_ZERO = 1e-7


@dataclass(frozen=True)
class Check:
    """A randomized check.

    ``fn(rng, d)`` returns one residual per entry of ``components``, a tuple
    of ``(suffix, tolerance)`` pairs.
    """

    name: str
    fn: object
    components: tuple


def _scale(P, Q):
    return float(np.sqrt(np.trace(P).real * np.trace(Q).real))


def _rel(a, b, floor=0.0):
    return abs(a - b) / max(abs(b), floor, np.finfo(float).tiny)


def _pd(rng, d, cap=COND_CAP):
    return la.positive_from_rng(rng, d, cap)


def _density(rng, d, cap=COND_CAP):
    return la.density_from_rng(rng, d, cap)


# -- individual checks -------------------------------------------------------


def _tangent_space(rng, d):
    P, Q, R = _pd(rng, d), _pd(rng, d), _pd(rng, d)
    B = generalized_bures_sq(P, Q, R)
    diff = log_map(BW, R, P).direction - log_map(BW, R, Q).direction
    return (_rel(inner_product(BW, R, diff, diff), B, _scale(P, Q)),)


def _frobenius_form(rng, d):
    from ..fidelity import frobenius_bures_sq

    P, Q, R = _pd(rng, d), _pd(rng, d), _pd(rng, d)
    return (_rel(frobenius_bures_sq(P, Q, R), generalized_bures_sq(P, Q, R), _scale(P, Q)),)


def _distance_axioms(rng, d):
    P, Q, S, R = (_density(rng, d) for _ in range(4))
    bpq = generalized_bures(P, Q, R)
    symmetry = abs(bpq - generalized_bures(Q, P, R))
    identity = generalized_bures(P, P, R)
    # b > 0 for distinct inputs: zero iff ||P - Q||_F <= DISTANCE_ZERO
    separated = np.linalg.norm(P - Q) > DISTANCE_ZERO
    separation = max(0.0, DISTANCE_ZERO - bpq) if separated else 0.0
    triangle = max(0.0, bpq - generalized_bures(P, S, R) - generalized_bures(S, Q, R))
    return symmetry, identity, separation, triangle


def _manifold_round_trip(rng, d):
    P, Q = _pd(rng, d, 1e4), _pd(rng, d, 1e4)
    out = []
    for m in (BW, AI, EUCLIDEAN):
        L = log_map(m, P, Q).direction
        rt = np.linalg.norm(exp_map(m, P, L) - Q) / np.linalg.norm(Q)
        dist = _rel(inner_product(m, P, L, L), squared_distance(m, P, Q))
        out.append(max(rt, dist))
    return tuple(out)


def _geodesic_consistency(rng, d):
    A, B = _pd(rng, d, 1e4), _pd(rng, d, 1e4)
    t = float(rng.uniform())
    ai = np.linalg.norm(geodesic_point(AI, A, B, t) - la.weighted_geometric_mean(A, B, t))
    C = geodesic_point(BW, A, B, t)
    ch = la.psd_sqrtm(C)
    fixed = (1 - t) * la.psd_sqrtm(ch @ A @ ch) + t * la.psd_sqrtm(ch @ B @ ch)
    bw = np.linalg.norm(fixed - C)
    inv = np.linalg.norm(geodesic_point(AI, la.invm(A), la.invm(B), t) - la.invm(geodesic_point(AI, A, B, t)))
    return (max(ai, bw / np.linalg.norm(C), inv / np.linalg.norm(la.invm(A))),)


def _path_check(path):
    def fn(rng, d):
        rep = check_path(path, _density(rng, d), _density(rng, d), n_points=9)
        return (rep.max_residual, rep.imag_residual) if path in (5, 6) else (rep.max_residual,)

    return fn


def _block(rng, d):
    P, Q, R = _pd(rng, d), _pd(rng, d), _pd(rng, d)
    system = build_block_system(P, Q, R)
    lam = la._eigh(system.X_star).eigenvalues[0] / max(1.0, np.linalg.norm(system.X_star, 2))
    F, re, B = extract_from_block(system)
    Fd = complex(generalized_fidelity(P, Q, R))
    s = _scale(P, Q)
    target = uhlmann(P, R) + uhlmann(Q, R)
    return (
        max(0.0, -lam),
        _rel(objective(system), target),
        max(_rel(F, Fd, s), _rel(re, Fd.real, s)),
        _rel(B, generalized_bures_sq(P, Q, R), s),
    )


def _purification(rng, d):
    P, Q, R = _pd(rng, d), _pd(rng, d), _pd(rng, d)
    res = check_purification(P, Q, R)
    s = _scale(P, Q)
    return res["residual"] / max(abs(res["fidelity"]), s), res["trace_residual"] / np.linalg.norm(P)


def _su_d(rng, d):
    return (check_su_d(_pd(rng, d), _pd(rng, d), _pd(rng, d)),)


def _polar(rng, d):
    P, Q = _pd(rng, d), _pd(rng, d)
    x = float(rng.uniform(-1.0, 1.0))
    avg = polar_fidelity_average(P, Q, x)
    closed = polar_fidelity(P, Q, x)
    s = _scale(P, Q)
    return _rel(closed, avg, s), abs(avg.imag) / s


def _interior(rng, d):
    P, Q = _pd(rng, d), _pd(rng, d)
    n = int(rng.integers(1, 5))
    ens = Ensemble([_pd(rng, d) for _ in range(n)], rng.dirichlet(np.ones(n)))
    s = _scale(P, Q)
    direct = interior_fidelity(P, Q, ens)
    norm = np.linalg.norm(mean_unitary_factor(P, Q, ens), 2)
    return _rel(interior_fidelity_unitary(P, Q, ens), direct, s), max(0.0, norm - 1.0)


def _divergence_recovery(rng, d):
    P = _density(rng, d, DIVERGENCE_COND_CAP)
    Q = _pd(rng, d, DIVERGENCE_COND_CAP)
    worst = {k: 0.0 for k in NAMED_DIVERGENCES}
    for a in ALPHAS:
        bases = recovery_bases(P, Q, a)
        for k, f in NAMED_DIVERGENCES.items():
            worst[k] = max(worst[k], _rel(generalized_renyi(P, Q, bases[k], a), f(P, Q, a)))
    return tuple(worst[k] for k in NAMED_DIVERGENCES)


def _classical_collapse(rng, d):
    V = la.unitary_from_rng(rng, d)
    p = rng.dirichlet(np.ones(d))
    q = rng.uniform(0.05, 1.0, d)
    P = la.hermitian_part((V * p) @ V.conj().T)
    Q = la.hermitian_part((V * q) @ V.conj().T)
    R = la.hermitian_part((V * rng.uniform(0.05, 1.0, d)) @ V.conj().T)
    worst = 0.0
    for a in ALPHAS:
        ref = classical_renyi(p, q, a)
        vals = [f(P, Q, a) for f in NAMED_DIVERGENCES.values()] + [generalized_renyi(P, Q, R, a)]
        worst = max(worst, max(abs(v - ref) for v in vals))
    return (worst,)


def _divergence_limits(rng, d):
    P = _density(rng, d, DIVERGENCE_COND_CAP)
    Q = _density(rng, d, DIVERGENCE_COND_CAP)
    from ..divergence import geometric_renyi, sandwich

    um, bs = umegaki(P, Q), belavkin_staszewski(P, Q)
    h = 1e-4
    sw = max(abs(sandwich(P, Q, 1 + s * h) - um) for s in (-1, 1))
    ge = max(abs(geometric_renyi(P, Q, 1 + s * h) - bs) for s in (-1, 1))
    dmax = max(0.0, max(sandwich(P, Q, 3.0), um) - max_relative(P, Q))
    return sw, ge, dmax


_BARY_SIZES = (2, 3, 5)


def _barycenter_identity(rng, d):
    n = _BARY_SIZES[int(rng.integers(0, len(_BARY_SIZES)))]
    states = [_density(rng, d, 1e4) for _ in range(n)]
    return (check_barycenter_identity(states).residual,)


def _barycenter_geodesic(rng, d):
    P, Q = _pd(rng, d, 1e4), _pd(rng, d, 1e4)
    t = float(rng.uniform(0.05, 0.95))
    sigma = bw_barycenter(Ensemble([P, Q], [1.0 - t, t])).sigma
    G = geodesic_point(BW, P, Q, t)
    return (np.linalg.norm(sigma - G) / np.linalg.norm(G),)


def _prop(name):
    fn = properties.CHECKS[name]
    return Check(f"property.{name}", lambda rng, d: (fn(rng, d, COND_CAP),), (("", PROPERTY_TOLERANCES[name]),))


def build_checks():
    checks = [_prop(name) for name in properties.CHECKS]
    checks += [
        Check("tangent_space_identity", _tangent_space, (("", 1e-8),)),
        Check("frobenius_form", _frobenius_form, (("", 1e-8),)),
        Check(
            "distance_axioms",
            _distance_axioms,
            (("symmetry", 0.0), ("identity", DISTANCE_ZERO), ("separation", 0.0), ("triangle", 1e-10)),
        ),
        Check("manifold_round_trip", _manifold_round_trip, (("bw", 1e-8), ("ai", 1e-8), ("euclidean", 1e-8))),
        Check("geodesic_consistency", _geodesic_consistency, (("", 1e-8),)),
    ]
    for p in PATH_IDS:
        comps = (("", 1e-8), ("reality", 1e-10)) if p in (5, 6) else (("", 1e-8),)
        checks.append(Check(f"path_{p}", _path_check(p), comps))
    checks += [
        Check("block_matrix", _block, (("psd", 1e-10), ("objective", 1e-9), ("fidelity", 1e-9), ("distance", 1e-9))),
        Check("purification", _purification, (("overlap", 1e-9), ("partial_trace", 1e-10))),
        Check("su_d", _su_d, (("", 1e-8),)),
        Check("polar_fidelity", _polar, (("closed_form", 1e-8), ("reality", 1e-10))),
        Check("interior_fidelity", _interior, (("unitary_form", 1e-10), ("spectral_norm", 1e-10))),
        Check("divergence_recovery", _divergence_recovery, tuple((k, 1e-8) for k in NAMED_DIVERGENCES)),
        Check("divergence_classical_collapse", _classical_collapse, (("", 1e-10),)),
        Check("divergence_limits", _divergence_limits, (("sandwich_to_umegaki", 1e-3), ("geometric_to_bs", 1e-3), ("max_bound", 1e-10))),
        Check("barycenter_identity", _barycenter_identity, (("", 1e-6),)),
        Check("barycenter_geodesic", _barycenter_geodesic, (("", 1e-7),)),
    ]
    return checks


# -- report ------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    trials: int
    max_residual: float
    tol: float
    verdict: str
    worst_trial: int = -1
    worst_dim: int = -1

    def to_dict(self):
        return dict(self.__dict__)


@dataclass
class SuiteReport:
    config: dict
    checks: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    scans: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self):
        return all(c.verdict == "pass" for c in self.checks) and all(w["passed"] for w in self.witnesses)

    def failures(self):
        return [c.name for c in self.checks if c.verdict != "pass"] + [
            w["name"] for w in self.witnesses if not w["passed"]
        ]

    def to_dict(self):
        return {
            "config": self.config,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "witnesses": self.witnesses,
            "scans": self.scans,
            "elapsed_seconds": self.elapsed,
        }


def thread_count():
    """Worker threads from ``BURES_GEOM_THREADS`` (default 1)."""
    raw = os.environ.get("BURES_GEOM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _check_rng(seed, name, trial):
    key = [int(seed), zlib.crc32(name.encode()), int(trial)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(key)))


def _run_check(check, dims, trials, seed, tol, pool):
    def one(k):
        d = dims[k % len(dims)]
        return d, check.fn(_check_rng(seed, check.name, k), d)

    outcomes = list(pool.map(one, range(trials))) if pool else [one(k) for k in range(trials)]
    results = []
    for i, (suffix, default_tol) in enumerate(check.components):
        limit = default_tol if tol is None else tol
        worst, worst_k = -np.inf, -1
        for k, (_, res) in enumerate(outcomes):
            r = float(res[i])
            if not np.isfinite(r):
                r = np.inf
            if r > worst:
                worst, worst_k = r, k
        name = f"{check.name}.{suffix}" if suffix else check.name
        verdict = "pass" if worst <= limit else "fail"
        results.append(CheckResult(name, trials, worst, limit, verdict, worst_k, dims[worst_k % len(dims)]))
    return results


def run_suite(dims=DEFAULT_DIMS, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED, tol=None, only=None, threads=None):
    """Run all checks and return a :class:`SuiteReport`.

    Parameters
    ----------
    dims : sequence of int
        Dimensions, cycled over trials.
    trials : int
        Trials per check.  ``0`` gives an empty report.
    seed : int
    tol : float, optional
        Overrides every check's own tolerance when given.
    only : iterable of str, optional
        Restrict to checks whose name starts with one of these prefixes.
    threads : int, optional
        Worker threads; defaults to ``BURES_GEOM_THREADS``.
    """
    dims = tuple(int(d) for d in dims)
    if not dims or min(dims) < 1:
        raise ValueError("dims must be a non-empty list of positive integers")
    if trials < 0:
        raise ValueError("trials must be >= 0")
    config = {"dims": list(dims), "trials": trials, "seed": seed, "tol": tol}
    report = SuiteReport(config)
    if trials == 0:
        return report
    start = time.perf_counter()
    threads = thread_count() if threads is None else threads
    checks = build_checks()
    if only:
        checks = [c for c in checks if any(c.name.startswith(p) for p in only)]
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for check in checks:
            report.checks.extend(_run_check(check, dims, trials, seed, tol, pool))
    finally:
        if pool:
            pool.shutdown()
    if not only or any("witness".startswith(p) or p.startswith("witness") for p in only):
        report.witnesses = [_plain_witness(w) for w in witnesses.all_witnesses()]
        rng = _check_rng(seed, "monotonicity_scan", 0)
        P, Q = _density(rng, dims[0]), _density(rng, dims[0])
        scan = monotonicity_scan(P, Q)
        report.scans.append({"name": "monotonicity_scan", "asserted": False, "dim": dims[0], **scan})
    report.elapsed = time.perf_counter() - start
    return report


def _plain_witness(w):
    out = {}
    for k, v in w.items():
        if isinstance(v, complex):
            v = {"re": v.real, "im": v.imag}
        elif isinstance(v, tuple):
            v = list(v)
        elif isinstance(v, (np.floating, np.bool_)):
            v = v.item()
        out[k] = v
    return out
