import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bures_geom import linalg as la
from bures_geom.errors import DimensionError
from bures_geom.fidelity import classical_fidelity, generalized_fidelity, uhlmann
from bures_geom.verify import block, checks, paths, purification, suite, witnesses

from conftest import HOLEVO, MATSUMOTO, P0, Q0, UHLMANN, seeds, triple


def test_path_bases_at_ends():
    P, Q = la.random_positive(3, 1), la.random_positive(3, 2)
    np.testing.assert_allclose(paths.path_base(2, P, Q, 0.0), P, atol=1e-12)
    np.testing.assert_allclose(paths.path_base(5, P, Q, 0.5), np.eye(3), atol=1e-12)
    mid = la.geometric_mean(la.invm(P), la.invm(Q))
    np.testing.assert_allclose(paths.path_base(9, P, Q, 0.5), mid, atol=1e-10)
    with pytest.raises(ValueError):
        paths.path_base(12, P, Q, 0.5)


def test_path_oracles():
    rep = paths.check_path(2, P0, Q0)
    assert len(rep.samples) == 9
    assert all(abs(f - UHLMANN) < 1e-9 for _, f in rep.samples)
    rep = paths.check_path(10, P0, Q0)
    assert all(abs(f - MATSUMOTO) < 1e-9 for _, f in rep.samples)
    rep = paths.check_path(5, P0, Q0)
    values = dict(rep.samples)
    for t, ref in ((0.0, UHLMANN), (0.5, HOLEVO), (1.0, MATSUMOTO)):
        assert values[t] == pytest.approx(ref, abs=1e-12)


@pytest.mark.parametrize("path", paths.PATH_IDS)
@given(seeds, st.sampled_from([2, 3, 4]))
def test_every_path(path, seed, d):
    P, Q = la.random_positive(d, seed, 1e3), la.random_positive(d, seed, 1e3, trial=1)
    rep = paths.check_path(path, P, Q)
    assert rep.verdict == "pass", rep.to_dict()


def test_check_path_reports_failure():
    rep = paths.check_path(2, P0, Q0, tol=0.0)
    assert rep.verdict in ("pass", "fail")
    rep = paths.check_path(5, la.random_positive(3, 4), la.random_positive(3, 5), tol=1e-30)
    assert rep.verdict == "fail"
    with pytest.raises(ValueError):
        paths.check_path(1, P0, Q0, n_points=4)


def test_block_oracles():
    sys_ = block.build_block_system(P0, Q0, np.eye(2))
    assert block.objective(sys_) == pytest.approx(2.732050807568877, abs=1e-14)
    F, re, B = block.extract_from_block(sys_)
    assert F == pytest.approx(HOLEVO, abs=1e-14)
    assert re == pytest.approx(HOLEVO, abs=1e-14)
    assert B == pytest.approx(0.133974596215561, abs=1e-14)
    np.testing.assert_allclose(sys_.phi(), sys_.B, atol=1e-14)


@given(triple())
def test_block_system(PQR):
    P, Q, R = PQR
    s = block.build_block_system(P, Q, R)
    lam = np.linalg.eigvalsh(s.X_star)
    assert lam[0] >= -1e-10 * lam[-1]
    scale = np.trace(s.B).real
    assert abs(block.objective(s) - uhlmann(P, R) - uhlmann(Q, R)) <= 1e-9 * scale
    F, re, B = block.extract_from_block(s)
    ref = complex(generalized_fidelity(P, Q, R))
    assert abs(F - ref) <= 1e-9 * scale
    assert abs(re - ref.real) <= 1e-9 * scale


def test_purification_oracle():
    out = purification.check_purification(P0, Q0, np.eye(2))
    assert out["overlap"] == pytest.approx(HOLEVO, abs=1e-14)
    out = purification.check_purification(P0, P0, Q0)
    assert out["overlap"] == pytest.approx(1.0, abs=1e-14)


@given(triple())
def test_purification(PQR):
    out = purification.check_purification(*PQR)
    assert out["residual"] <= 1e-9 * np.sqrt(np.trace(PQR[0]).real * np.trace(PQR[1]).real)
    assert out["trace_residual"] <= 1e-10 * np.trace(PQR[0] + PQR[1]).real


def test_su_d():
    P, R = la.random_positive(3, 6), la.random_positive(3, 7)
    assert checks.check_su_d(P, P, R) < 1e-12
    for k in range(50):
        P, Q, R = (la.random_positive(2 + k % 5, k, trial=j) for j in range(3))
        assert checks.check_su_d(P, Q, R) <= 1e-8


def test_monotonicity_scan_oracle():
    out = checks.monotonicity_scan(P0, Q0, [-1.0, 0.0, 1.0])
    np.testing.assert_allclose(out["F_bar"], [MATSUMOTO, HOLEVO, UHLMANN], atol=1e-13)
    assert out["monotone"]["F_bar"]
    flat = checks.monotonicity_scan(P0, P0)
    np.testing.assert_allclose(flat["F_bar"], 1.0, atol=1e-13)


def test_rebit_helpers():
    M = witnesses.rebit(0.3, -0.4)
    assert witnesses.bloch_xz(M) == pytest.approx((0.3, -0.4))
    with pytest.raises(DimensionError):
        witnesses.bloch_xz(np.eye(3) / 3)
    with pytest.raises(DimensionError):
        witnesses.bloch_xz(np.array([[0.5, 0.5j], [-0.5j, 0.5]]))


def test_witnesses():
    a = witnesses.commuting_gap()
    assert a["passed"] and a["gap"] >= 1e-3
    b = witnesses.negative_real_part()
    assert b["passed"] and b["F"].real < -1e-3
    c = witnesses.geodesic_constant()
    assert c["passed"] and c["variation"] <= 1e-8 and c["max_imag"] <= 1e-10


def test_rebit_grid_commuting_at_identity():
    P, Q = (witnesses.rebit(*c) for c in witnesses.COMMUTING_PAIR)
    rows = {(x, z): (re, im) for x, z, re, im in witnesses.rebit_grid(P, Q, 17)}
    re, im = rows[(0.0, 0.0)]
    assert re == pytest.approx(classical_fidelity(np.diag(P).real, np.diag(Q).real), abs=1e-14)
    assert im == 0


def test_rebit_grid_threads_deterministic():
    P, Q = (witnesses.rebit(*c) for c in witnesses.NEGATIVE_PAIR)
    serial = witnesses.rebit_grid(P, Q, 20)
    assert witnesses.rebit_grid(P, Q, 20, threads=4) == serial
    assert serial == sorted(serial)
    assert all(x * x + z * z < 1 for x, z, _, _ in serial)
    assert min(r[2] for r in serial) < 0


def test_geodesic_samples_on_oracle_pair():
    rows = witnesses.geodesic_samples(P0, Q0)
    assert [r[0] for r in rows] == pytest.approx(np.linspace(0, 1, 11))
    assert all(abs(r[3] - UHLMANN) < 1e-8 and abs(r[4]) < 1e-10 for r in rows)


def test_suite_empty():
    rep = suite.run_suite(trials=0)
    assert rep.checks == [] and rep.passed


def test_suite_subset_and_determinism():
    a = suite.run_suite(dims=[2], trials=6, seed=3, only=["path_2", "su_d"])
    b = suite.run_suite(dims=[2], trials=6, seed=3, only=["path_2", "su_d"], threads=3)
    assert [c.name for c in a.checks] == ["path_2", "su_d"]
    assert [c.max_residual for c in a.checks] == [c.max_residual for c in b.checks]
    assert a.passed
    json.dumps(a.to_dict())


def test_suite_tolerance_override_fails():
    rep = suite.run_suite(dims=[3], trials=4, tol=1e-20, only=["path_5"])
    assert not rep.passed
    assert rep.failures() == [c.name for c in rep.checks]


def test_suite_names_cover_properties():
    names = {c.name for c in suite.build_checks()}
    from bures_geom.fidelity import PROPERTY_TOLERANCES

    assert {f"property.{k}" for k in PROPERTY_TOLERANCES} <= names
    assert {f"path_{k}" for k in paths.PATH_IDS} <= names


def test_suite_rejects_bad_config():
    with pytest.raises(ValueError):
        suite.run_suite(dims=[], trials=1)
    with pytest.raises(ValueError):
        suite.run_suite(trials=-1)


def test_thread_count(monkeypatch):
    monkeypatch.setenv("BURES_GEOM_THREADS", "3")
    assert suite.thread_count() == 3
    monkeypatch.setenv("BURES_GEOM_THREADS", "junk")
    assert suite.thread_count() == 1
