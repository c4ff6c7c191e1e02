import numpy as np
import pytest
from hypothesis import given, strategies as st

from bures_geom import divergence as dv
from bures_geom import linalg as la
from bures_geom.errors import DomainError, PositivityError
from bures_geom.fidelity import generalized_fidelity, uhlmann

from conftest import P0, Q0, UHLMANN, seeds

p, q = np.array([0.5, 0.5]), np.array([0.25, 0.75])
Pd, Qd = np.diag(p), np.diag(q)
LOG2_4_3 = 0.415037499278844
ALPHAS = [0.3, 0.7, 2.0, 3.0]


def test_classical_oracles():
    assert dv.classical_renyi(p, p, 2) == pytest.approx(0.0, abs=1e-15)
    assert dv.classical_renyi(p, q, 2) == pytest.approx(LOG2_4_3, abs=1e-14)
    bc = np.sum(np.sqrt(p * q))
    assert dv.classical_renyi(p, q, 0.5) == pytest.approx(-2 * np.log2(bc), abs=1e-14)
    assert dv.classical_renyi([1, 0], [0, 1], 2) == np.inf
    assert dv.classical_renyi(p, q, 2, log_base=np.e) == pytest.approx(np.log(4 / 3))


@pytest.mark.parametrize("alpha", [0.0, 1.0, -0.5, np.inf])
def test_alpha_domain(alpha):
    with pytest.raises(DomainError):
        dv.petz(P0, Q0, alpha)


def test_alpha_z_oracles():
    assert dv.alpha_z_divergence(Pd, Qd, 2, 1) == pytest.approx(LOG2_4_3, abs=1e-14)
    assert dv.alpha_z_divergence(P0, P0, 0.7, 0.4) == pytest.approx(0.0, abs=1e-14)
    with pytest.raises(DomainError):
        dv.alpha_z_divergence(P0, Q0, 0.5, -1.0)


@pytest.mark.parametrize("name", sorted(dv.NAMED))
@pytest.mark.parametrize("alpha", ALPHAS)
def test_named_commuting_collapse(name, alpha):
    assert dv.NAMED[name](Pd, Qd, alpha) == pytest.approx(dv.classical_renyi(p, q, alpha), abs=1e-13)
    assert dv.NAMED[name](Q0, Q0, alpha) == pytest.approx(0.0, abs=1e-13)


def test_sandwich_half_is_uhlmann():
    assert dv.sandwich(P0, Q0, 0.5) == pytest.approx(0.192645077942396, abs=1e-14)
    assert dv.sandwich(P0, Q0, 0.5) == pytest.approx(-2 * np.log2(UHLMANN), abs=1e-14)


def test_geometric_oracle():
    assert dv.geometric_renyi(Pd, Qd, 2) == pytest.approx(LOG2_4_3, abs=1e-14)


def test_limit_divergences():
    assert dv.umegaki(Pd, Qd) == pytest.approx(0.207518749639422, abs=1e-14)
    assert dv.max_relative(Pd, Qd) == pytest.approx(1.0, abs=1e-14)
    assert dv.belavkin_staszewski(Pd, Qd) == pytest.approx(dv.umegaki(Pd, Qd), abs=1e-14)
    for fn in (dv.umegaki, dv.belavkin_staszewski, dv.max_relative):
        assert fn(P0, P0) == pytest.approx(0.0, abs=1e-14)


def test_umegaki_rank_deficient_p():
    assert dv.umegaki(np.diag([1.0, 0.0]), np.eye(2) / 2) == pytest.approx(1.0)
    with pytest.raises(PositivityError):
        dv.umegaki(np.eye(2) / 2, np.diag([1.0, 0.0]))


@given(seeds, st.sampled_from([2, 3, 4]))
def test_ordering(seed, d):
    P, Q = la.random_density(d, seed, 1e2), la.random_density(d, seed, 1e2, trial=1)
    for a in (0.7, 2.0):
        s, pz, g = dv.sandwich(P, Q, a), dv.petz(P, Q, a), dv.geometric_renyi(P, Q, a)
        assert s <= pz + 1e-10 and pz <= g + 1e-10
    assert dv.sandwich(P, Q, 3.0) <= dv.max_relative(P, Q) + 1e-10


@given(seeds, st.sampled_from([2, 3]))
def test_limits_at_one(seed, d):
    P, Q = la.random_density(d, seed, 1e2), la.random_density(d, seed, 1e2, trial=1)
    for a in (1 - 1e-4, 1 + 1e-4):
        assert dv.sandwich(P, Q, a) == pytest.approx(dv.umegaki(P, Q), abs=1e-3)
        assert dv.geometric_renyi(P, Q, a) == pytest.approx(dv.belavkin_staszewski(P, Q), abs=1e-3)


def test_trace_functional():
    assert dv.generalized_trace_functional(Pd, Qd, np.eye(2), 2) == pytest.approx(4 / 3)
    R = la.random_positive(2, 3)
    F = complex(generalized_fidelity(P0, Q0, R))
    assert dv.generalized_trace_functional(P0, Q0, R, 0.5) == pytest.approx(F, abs=1e-14)


@pytest.mark.parametrize("alpha", ALPHAS)
@given(seed=seeds, d=st.sampled_from([2, 3, 4]))
def test_recovery_bases(alpha, seed, d):
    P, Q = la.random_density(d, seed, 1e2), la.random_density(d, seed, 1e2, trial=1)
    for name, R in dv.recovery_bases(P, Q, alpha).items():
        ref = dv.NAMED[name](P, Q, alpha)
        got = dv.generalized_renyi(P, Q, R, alpha)
        assert abs(got - ref) <= 1e-8 * max(1.0, abs(ref))


def test_recovery_on_oracle_pair():
    for name, R in dv.recovery_bases(P0, Q0, 2.0).items():
        assert dv.generalized_renyi(P0, Q0, R, 2.0) == pytest.approx(dv.NAMED[name](P0, Q0, 2.0), abs=1e-12)


def test_generalized_renyi_self():
    R = la.random_positive(3, 4)
    P = la.random_density(3, 5)
    for a in ALPHAS:
        assert dv.generalized_renyi(P, P, R, a) == pytest.approx(0.0, abs=1e-9)
