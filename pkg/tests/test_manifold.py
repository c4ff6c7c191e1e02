import numpy as np
import pytest
from hypothesis import given, strategies as st

from bures_geom import linalg as la
from bures_geom.errors import DomainError, PositivityError
from bures_geom.fidelity import uhlmann
from bures_geom.manifold import (
    AI, BW, EUCLIDEAN, MetricKind, TangentVector, distance, exp_map, geodesic_point,
    inner_product, log_map, norm_sq, squared_distance,
)

from conftest import P0, Q0, UHLMANN, positive, triple

METRICS = [BW, AI, EUCLIDEAN]


def test_metric_parse():
    assert MetricKind.parse("BW") is BW
    assert MetricKind.parse("affine-invariant") is AI
    assert MetricKind.parse(EUCLIDEAN) is EUCLIDEAN
    with pytest.raises(ValueError):
        MetricKind.parse("hyperbolic")


def test_inner_product_oracles():
    I = np.eye(2)
    assert inner_product(EUCLIDEAN, P0, I, I) == pytest.approx(2.0)
    assert inner_product(BW, I, I, I) == pytest.approx(0.5)
    X = np.diag([1.0, 2.0])
    assert inner_product(AI, I, X, X) == pytest.approx(5.0)


@pytest.mark.parametrize("metric", METRICS)
def test_exp_zero_is_identity(metric):
    P = la.random_positive(3, 4)
    np.testing.assert_allclose(exp_map(metric, P, np.zeros((3, 3))), P, atol=1e-13)


def test_exp_oracles():
    np.testing.assert_allclose(exp_map(EUCLIDEAN, np.eye(2), np.diag([1.0, -0.5])), np.diag([2.0, 0.5]))
    out = exp_map(AI, np.eye(2), np.diag([np.log(2), np.log(3)]))
    np.testing.assert_allclose(out, np.diag([2.0, 3.0]), atol=1e-14)


def test_exp_domain():
    with pytest.raises(DomainError):
        exp_map(EUCLIDEAN, np.eye(2), -2 * np.eye(2))
    with pytest.raises(DomainError):
        exp_map(BW, np.eye(2), -2 * np.eye(2))
    exp_map(AI, np.eye(2), -50 * np.eye(2))


@pytest.mark.parametrize("metric", METRICS)
def test_log_of_self_is_zero(metric):
    P = la.random_positive(3, 5)
    v = log_map(metric, P, P)
    assert isinstance(v, TangentVector)
    assert np.abs(v.direction).max() < 1e-12


def test_log_oracles():
    P, Q = la.random_positive(2, 1), la.random_positive(2, 2)
    np.testing.assert_allclose(log_map(EUCLIDEAN, P, Q).direction, Q - P)
    np.testing.assert_allclose(log_map(BW, np.eye(2), np.diag([4.0, 9.0])).direction, np.diag([2.0, 4.0]), atol=1e-14)


@pytest.mark.parametrize("metric", METRICS)
@given(triple(cap=1e2))
def test_exp_log_round_trip(metric, PQR):
    P, Q, _ = PQR
    X = log_map(metric, P, Q)
    np.testing.assert_allclose(exp_map(metric, P, X), Q, atol=1e-9 * np.abs(Q).max())


@pytest.mark.parametrize("metric", METRICS)
@given(triple(cap=1e2))
def test_log_norm_is_squared_distance(metric, PQR):
    P, Q, _ = PQR
    X = log_map(metric, P, Q).direction
    assert norm_sq(metric, P, X) == pytest.approx(squared_distance(metric, P, Q), rel=1e-8, abs=1e-12)


def test_geodesic_endpoints():
    P, Q = la.random_positive(3, 1), la.random_positive(3, 2)
    for metric in METRICS:
        np.testing.assert_allclose(geodesic_point(metric, P, Q, 0), P, atol=1e-12)
        np.testing.assert_allclose(geodesic_point(metric, P, Q, 1), Q, atol=1e-10)


def test_geodesic_oracles():
    a, b = np.diag([0.75, 0.25]), np.diag([0.25, 0.75])
    mid = ((np.sqrt(0.75) + np.sqrt(0.25)) / 2) ** 2
    np.testing.assert_allclose(geodesic_point(BW, a, b, 0.5), mid * np.eye(2), atol=1e-15)
    np.testing.assert_allclose(geodesic_point(AI, np.eye(2), np.diag([4.0, 16.0]), 0.5), np.diag([2.0, 4.0]))


def test_bw_extension_domain():
    a, b = np.diag([1.0, 1.0]), np.diag([4.0, 0.25])
    geodesic_point(BW, a, b, 1.5)
    with pytest.raises(DomainError):
        geodesic_point(BW, a, b, 3.0)


@pytest.mark.parametrize("metric", METRICS)
@given(triple(cap=1e2), st.floats(0.05, 0.95))
def test_geodesic_splits_distance(metric, PQR, t):
    P, Q, _ = PQR
    M = geodesic_point(metric, P, Q, t)
    d = distance(metric, P, Q)
    assert distance(metric, P, M) == pytest.approx(t * d, rel=1e-6, abs=1e-9)
    assert distance(metric, M, Q) == pytest.approx((1 - t) * d, rel=1e-6, abs=1e-9)


def test_distance_oracles():
    assert squared_distance(EUCLIDEAN, np.eye(2), np.diag([2.0, 3.0])) == pytest.approx(5.0)
    assert squared_distance(BW, P0, Q0) == pytest.approx(2 - 2 * UHLMANN, abs=1e-14)
    for metric in METRICS:
        assert squared_distance(metric, P0, P0) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("metric", METRICS)
@given(triple(cap=1e2))
def test_distance_symmetric(metric, PQR):
    P, Q, _ = PQR
    assert squared_distance(metric, P, Q) == pytest.approx(squared_distance(metric, Q, P), rel=1e-9, abs=1e-12)


@given(positive(), positive())
def test_bw_distance_is_uhlmann(P, Q):
    if P.shape != Q.shape:
        return
    ref = np.trace(P + Q).real - 2 * uhlmann(P, Q)
    assert squared_distance(BW, P, Q) == pytest.approx(max(ref, 0.0), rel=1e-9, abs=1e-12)


def test_ai_congruence_invariance():
    P, Q = la.random_positive(3, 11), la.random_positive(3, 12)
    G = la.ginibre(3, la.random_generator(13))
    dA = squared_distance(AI, G @ P @ G.conj().T, G @ Q @ G.conj().T)
    assert dA == pytest.approx(squared_distance(AI, P, Q), rel=1e-9)


def test_rejects_non_pd():
    with pytest.raises(PositivityError):
        log_map(BW, np.diag([1.0, 0.0]), np.eye(2))
