"""``bures-geom`` command line.

Matrices are read from JSON files (see :mod:`bures_geom.io`).  Results go
to stdout as JSON; failures print a message to stderr and exit with the
code carried by the raised error (2 input, 3 dimension, 4 positivity or
domain, 5 non-convergence, 1 failed verification).
"""

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import barycenter, divergence, fidelity, io, manifold
from .errors import BuresGeomError, DimensionError, InputError
from .verify import suite, witnesses

FIDELITY_KINDS = ("uhlmann", "holevo", "matsumoto", "log-euclidean", "z", "generalized", "polar", "interior")
DIVERGENCE_KINDS = (
    "petz", "sandwich", "reverse-sandwich", "geometric", "alpha-z",
    "umegaki", "belavkin-staszewski", "max", "generalized",
)
METRICS = ("bw", "ai", "euclidean")
WITNESS_PAIRS = {
    "commuting": witnesses.COMMUTING_PAIR,
    "negative": witnesses.NEGATIVE_PAIR,
    "geodesic": witnesses.GEODESIC_PAIR,
}
MIN_RESOLUTION = 16


def _emit(obj):
    print(io.dumps(obj))


def _complex(v):
    v = complex(v)
    return {"re": v.real, "im": v.imag}


def _pair(args):
    P, Q = io.load_matrix(args.P), io.load_matrix(args.Q)
    if P.shape != Q.shape:
        raise DimensionError(f"P is {P.shape[0]}x{P.shape[0]} but Q is {Q.shape[0]}x{Q.shape[0]}")
    return P, Q


def _base(source, d):
    if source is None:
        raise InputError("--base is required for this kind")
    if source.upper() == "I":
        return np.eye(d, dtype=complex)
    R = io.load_matrix(source)
    if R.shape[0] != d:
        raise DimensionError(f"base is {R.shape[0]}x{R.shape[0]}, expected {d}x{d}")
    return R


def cmd_fidelity(args):
    P, Q = _pair(args)
    kind = args.kind
    if kind in fidelity.NAMED:
        value = fidelity.NAMED[kind](P, Q)
    elif kind == "z":
        value = fidelity.z_fidelity(P, Q, args.z)
    elif kind == "polar":
        value = fidelity.polar_fidelity(P, Q, args.x)
    elif kind == "interior":
        if args.ensemble is None:
            raise InputError("--ensemble is required for --kind interior")
        ens = io.load_ensemble(args.ensemble)
        if ens.dim != P.shape[0]:
            raise DimensionError(f"ensemble bases are {ens.dim}x{ens.dim}, expected {P.shape[0]}")
        value = fidelity.interior_fidelity(P, Q, ens)
    else:
        value = fidelity.generalized_fidelity(P, Q, _base(args.base, P.shape[0]), form=args.form)
    _emit(_complex(value))
    return 0


def cmd_distance(args):
    P, Q = _pair(args)
    if args.base is not None:
        R = _base(args.base, P.shape[0])
        sq = fidelity.generalized_bures_sq(P, Q, R)
        out = {"metric": "generalized", "squared_distance": sq, "distance": fidelity.generalized_bures(P, Q, R)}
    else:
        sq = manifold.squared_distance(args.metric, P, Q)
        out = {"metric": args.metric, "squared_distance": sq, "distance": float(np.sqrt(sq))}
    _emit(out)
    return 0


def cmd_geodesic(args):
    P, Q = _pair(args)
    _emit(manifold.geodesic_point(args.metric, P, Q, args.t))
    return 0


def cmd_barycenter(args):
    ens = io.load_ensemble(args.ensemble)
    result = barycenter.bw_barycenter(ens, tol=args.tol, max_iter=args.max_iter, normalize=args.normalize)
    _emit(result.to_dict())
    return 0


def cmd_divergence(args):
    P, Q = _pair(args)
    kind, a = args.kind, args.alpha
    if kind == "umegaki":
        value = divergence.umegaki(P, Q)
    elif kind == "belavkin-staszewski":
        value = divergence.belavkin_staszewski(P, Q)
    elif kind == "max":
        value = divergence.max_relative(P, Q)
    elif kind == "alpha-z":
        value = divergence.alpha_z_divergence(P, Q, a, args.z)
    elif kind == "generalized":
        value = divergence.generalized_renyi(P, Q, _base(args.base, P.shape[0]), a)
    else:
        value = divergence.NAMED[kind.replace("-", "_")](P, Q, a)
    _emit({"kind": kind, "alpha": a, "bits": value})
    return 0


def cmd_verify(args):
    report = suite.run_suite(dims=args.dims, trials=args.trials, seed=args.seed, tol=args.tol, only=args.only)
    text = json.dumps(report.to_dict(), indent=2, default=io._plain)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc}") from exc
    for c in report.checks:
        print(f"{c.verdict.upper():4s} {c.name}  max={c.max_residual:.3e}  tol={c.tol:.1e}")
    for w in report.witnesses:
        print(f"{'PASS' if w['passed'] else 'FAIL'} witness.{w['name']}")
    n_fail = len(report.failures())
    print(f"{'ok' if report.passed else 'FAILED'}: {n_fail} failing, {report.elapsed:.1f}s")
    return 0 if report.passed else 1


def _rebit_inputs(args):
    if args.witness:
        return tuple(witnesses.rebit(*c) for c in WITNESS_PAIRS[args.witness])
    if args.P is None or args.Q is None:
        raise InputError("give P and Q files or --witness")
    P, Q = _pair(args)
    for M in (P, Q):
        witnesses.bloch_xz(M)
    return P, Q


def _write_csv(path, header, rows):
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for row in rows:
                w.writerow([io.fmt(v) for v in row])
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


def cmd_rebit_contour(args):
    if args.resolution < MIN_RESOLUTION:
        raise InputError(f"resolution must be >= {MIN_RESOLUTION}, got {args.resolution}")
    P, Q = _rebit_inputs(args)
    grid = witnesses.rebit_grid(P, Q, args.resolution, threads=suite.thread_count())
    _write_csv(args.out, ("x", "z", "re_F", "im_F"), grid)
    geo_path = args.geodesic_out or os.path.splitext(args.out)[0] + "_geodesic.csv"
    geo = witnesses.geodesic_samples(P, Q)
    _write_csv(geo_path, ("t", "x", "z", "re_F", "im_F"), geo)
    fu = fidelity.uhlmann(P, Q)
    _emit({
        "points": len(grid),
        "min_re_F": min(r[2] for r in grid),
        "max_re_F": max(r[2] for r in grid),
        "uhlmann": fu,
        "geodesic_variation": max(abs(r[3] - fu) for r in geo),
        "geodesic_max_imag": max(abs(r[4]) for r in geo),
        "grid": args.out,
        "geodesic": geo_path,
    })
    return 0


def _dims(text):
    try:
        dims = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension list {text!r}") from None
    if not dims or min(dims) < 1:
        raise argparse.ArgumentTypeError("dimensions must be positive integers")
    return dims


def build_parser():
    parser = argparse.ArgumentParser(prog="bures-geom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def pair(p, optional=False):
        nargs = "?" if optional else None
        p.add_argument("P", nargs=nargs, help="matrix JSON file")
        p.add_argument("Q", nargs=nargs, help="matrix JSON file")

    p = sub.add_parser("fidelity", help="named, generalized, polar or interior fidelity")
    pair(p)
    p.add_argument("--kind", choices=FIDELITY_KINDS, default="uhlmann")
    p.add_argument("--base", help="base matrix JSON, or I for the identity")
    p.add_argument("--form", choices=[f.value for f in fidelity.FidelityForm], default="definition")
    p.add_argument("--x", type=float, default=1.0, help="polar parameter")
    p.add_argument("--z", type=float, default=1.0, help="z-fidelity parameter")
    p.add_argument("--ensemble", help="base ensemble JSON for --kind interior")
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("distance", help="geodesic or generalized Bures distance")
    pair(p)
    p.add_argument("--metric", choices=METRICS, default="bw")
    p.add_argument("--base", help="use the generalized Bures distance at this base (JSON or I)")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("geodesic", help="point on a geodesic")
    pair(p)
    p.add_argument("--metric", choices=METRICS, default="bw")
    p.add_argument("--t", type=float, default=0.5)
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("barycenter", help="Bures-Wasserstein barycenter of an ensemble")
    p.add_argument("ensemble", help="ensemble JSON file")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=10_000)
    p.add_argument("--normalize", choices=("weighted", "fidelity"), default="weighted")
    p.set_defaults(func=cmd_barycenter)

    p = sub.add_parser("divergence", help="quantum Renyi divergences, in bits")
    pair(p)
    p.add_argument("--kind", choices=DIVERGENCE_KINDS, default="sandwich")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--z", type=float, default=1.0)
    p.add_argument("--base", help="base for --kind generalized (JSON or I)")
    p.set_defaults(func=cmd_divergence)

    p = sub.add_parser("verify", help="run the randomized verification suite")
    p.add_argument("--dims", type=_dims, default=list(suite.DEFAULT_DIMS))
    p.add_argument("--trials", type=int, default=suite.DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=suite.DEFAULT_SEED)
    p.add_argument("--tol", type=float, help="override every check tolerance")
    p.add_argument("--only", nargs="+", help="check name prefixes")
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rebit-contour", help="F_R over rebit bases, as CSV")
    pair(p, optional=True)
    p.add_argument("--witness", choices=sorted(WITNESS_PAIRS), help="use a stored witness pair")
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--out", required=True, help="grid CSV path")
    p.add_argument("--geodesic-out", help="geodesic CSV path (default: <out>_geodesic.csv)")
    p.set_defaults(func=cmd_rebit_contour)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BuresGeomError as exc:
        print(f"bures-geom: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"bures-geom: error: {exc}", file=sys.stderr)
        return InputError.exit_code


if __name__ == "__main__":
    sys.exit(main())
