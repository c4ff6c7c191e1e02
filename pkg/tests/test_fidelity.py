import numpy as np
import pytest
from hypothesis import given, strategies as st

from bures_geom import fidelity as fid
from bures_geom import linalg as la
from bures_geom.ensemble import Ensemble
from bures_geom.errors import DimensionError, DomainError, InputError, PositivityError
from bures_geom.manifold import BW, geodesic_point, log_map, norm_sq, squared_distance
from bures_geom.verify.properties import CHECKS

from conftest import HOLEVO, LOG_EUCLIDEAN, MATSUMOTO, P0, Q0, UHLMANN, density_pair, seeds, triple


def test_classical_fidelity():
    assert fid.classical_fidelity([0.5, 0.5], [0.5, 0.5]) == pytest.approx(1.0)
    assert fid.classical_fidelity([1, 0], [0, 1]) == 0.0
    assert fid.classical_fidelity([0.25, 0.75], [0.75, 0.25]) == pytest.approx(2 * np.sqrt(0.1875), abs=1e-15)
    with pytest.raises(InputError):
        fid.classical_fidelity([0.5, 0.5], [1.0])


@pytest.mark.parametrize(
    "fn, value",
    [(fid.uhlmann, UHLMANN), (fid.holevo, HOLEVO), (fid.matsumoto, MATSUMOTO), (fid.log_euclidean, LOG_EUCLIDEAN)],
)
def test_named_oracles(fn, value):
    assert fn(P0, Q0) == pytest.approx(value, abs=1e-14)
    assert fn(P0, P0) == pytest.approx(1.0, abs=1e-14)
    p, q = np.array([0.2, 0.3, 0.5]), np.array([0.6, 0.3, 0.1])
    assert fn(np.diag(p), np.diag(q)) == pytest.approx(fid.classical_fidelity(p, q), abs=1e-14)


def test_named_order():
    assert MATSUMOTO < HOLEVO < UHLMANN
    for seed in range(20):
        P, Q = la.random_density(3, seed), la.random_density(3, seed, trial=1)
        m, h, u = fid.matsumoto(P, Q), fid.holevo(P, Q), fid.uhlmann(P, Q)
        assert m <= h + 1e-12 and h <= u + 1e-12


def test_z_fidelity_reductions():
    assert fid.z_fidelity(P0, Q0, 1.0) == pytest.approx(HOLEVO, abs=1e-14)
    assert fid.z_fidelity(P0, Q0, 0.5) == pytest.approx(UHLMANN, abs=1e-14)
    p, q = np.array([0.1, 0.9]), np.array([0.7, 0.3])
    for z in (0.3, 1.0, 2.5):
        assert fid.z_fidelity(np.diag(p), np.diag(q), z) == pytest.approx(fid.classical_fidelity(p, q))
    with pytest.raises(DomainError):
        fid.z_fidelity(P0, Q0, 0.0)


def test_hellinger_quantities():
    assert fid.hellinger_quantity(P0, Q0) == pytest.approx(2 - 2 * UHLMANN, abs=1e-14)
    assert fid.hellinger_quantity(P0, Q0, "holevo") == pytest.approx(0.133974596215561, abs=1e-14)
    assert fid.hellinger_quantity(P0, P0) == pytest.approx(0.0, abs=1e-15)


def test_uhlmann_rank_deficient():
    psi = np.array([1.0, 0.0])
    phi = np.array([1.0, 1.0]) / np.sqrt(2)
    assert fid.uhlmann(np.outer(psi, psi), np.outer(phi, phi)) == pytest.approx(abs(np.vdot(psi, phi)), abs=1e-12)


def test_generalized_reductions():
    assert complex(fid.generalized_fidelity(P0, Q0, np.eye(2))) == pytest.approx(HOLEVO, abs=1e-14)
    assert complex(fid.generalized_fidelity(P0, Q0, P0)) == pytest.approx(UHLMANN, abs=1e-14)
    assert complex(fid.generalized_fidelity(P0, Q0, la.invm(P0))) == pytest.approx(MATSUMOTO, abs=1e-14)


@pytest.mark.parametrize("form", ["definition", "polar", "geomean"])
def test_generalized_forms_on_oracle(form):
    v = fid.generalized_fidelity(P0, Q0, Q0, form)
    assert v.form is fid.FidelityForm.parse(form)
    assert complex(v) == pytest.approx(UHLMANN, abs=1e-13)


def test_generalized_self():
    P, R = la.random_positive(3, 1), la.random_positive(3, 2)
    assert complex(fid.generalized_fidelity(P, P, R)) == pytest.approx(np.trace(P).real, rel=1e-12)


def test_generalized_is_complex_in_general():
    P, Q, R = (la.random_density(3, 5, trial=k) for k in range(3))
    assert abs(complex(fid.generalized_fidelity(P, Q, R)).imag) > 1e-6


def test_generalized_psd_falls_back_to_definition():
    P = np.diag([1.0, 0.0])
    v = fid.generalized_fidelity(P, Q0, np.eye(2), "polar")
    assert v.form is fid.FidelityForm.DEFINITION


def test_generalized_errors():
    with pytest.raises(PositivityError):
        fid.generalized_fidelity(P0, Q0, np.diag([1.0, 0.0]))
    with pytest.raises(DimensionError):
        fid.generalized_fidelity(P0, Q0, np.eye(3))
    with pytest.raises(ValueError):
        fid.generalized_fidelity(P0, Q0, np.eye(2), form="bogus")


@given(triple())
def test_forms_agree(PQR):
    P, Q, R = PQR
    ref = complex(fid.generalized_fidelity(P, Q, R))
    scale = np.sqrt(np.trace(P).real * np.trace(Q).real)
    for form in ("polar", "geomean"):
        assert abs(complex(fid.generalized_fidelity(P, Q, R, form)) - ref) <= 1e-9 * scale


@given(triple())
def test_conjugate_symmetry(PQR):
    P, Q, R = PQR
    a, b = complex(fid.generalized_fidelity(P, Q, R)), complex(fid.generalized_fidelity(Q, P, R))
    assert abs(a - b.conjugate()) <= 1e-9 * np.sqrt(np.trace(P).real * np.trace(Q).real)


@given(triple())
def test_bounded_by_uhlmann(PQR):
    P, Q, R = PQR
    assert abs(complex(fid.generalized_fidelity(P, Q, R))) <= fid.uhlmann(P, Q) * (1 + 1e-10)


@pytest.mark.parametrize("name", sorted(CHECKS))
@given(seed=seeds, d=st.sampled_from([2, 3, 5]))
def test_property(name, seed, d):
    res = CHECKS[name](la.random_generator(seed), d, 1e4)
    assert res <= fid.PROPERTY_TOLERANCES[name]


def test_pure_state_oracle():
    psi = np.array([1.0, 0.0])
    phi = np.array([1.0, 1.0]) / np.sqrt(2)
    assert fid.generalized_fidelity_pure(psi, phi, np.eye(2)) == pytest.approx(0.5)
    assert fid.generalized_fidelity_pure(psi, psi, P0) == pytest.approx(1.0)
    assert fid.generalized_fidelity_pure(psi, [0, 1], P0) == 0
    with pytest.raises(InputError):
        fid.generalized_fidelity_pure([1, 1], psi, np.eye(2))


@given(seeds, st.sampled_from([2, 3, 4]))
def test_pure_state_matches_matrix(seed, d):
    rng = la.random_generator(seed)
    psi, phi = (v / np.linalg.norm(v) for v in la.ginibre(d, rng)[:, :2].T)
    R = la.positive_from_rng(rng, d, 1e3)
    F = complex(fid.generalized_fidelity(np.outer(psi, psi.conj()), np.outer(phi, phi.conj()), R))
    assert abs(F - fid.generalized_fidelity_pure(psi, phi, R)) < 1e-9


def test_bures_oracles():
    assert fid.generalized_bures_sq(P0, Q0, P0) == pytest.approx(0.129171306613029, abs=1e-14)
    assert fid.generalized_bures_sq(P0, Q0, np.eye(2)) == pytest.approx(0.133974596215561, abs=1e-14)
    assert fid.generalized_bures(P0, P0, Q0) == 0.0


@given(triple())
def test_bures_forms_and_tangent_identity(PQR):
    P, Q, R = PQR
    B = fid.generalized_bures_sq(P, Q, R)
    scale = np.trace(P + Q).real
    assert abs(fid.frobenius_bures_sq(P, Q, R) - B) <= 1e-9 * scale
    tangent = norm_sq(BW, R, log_map(BW, R, P).direction - log_map(BW, R, Q).direction)
    assert abs(tangent - B) <= 1e-8 * scale
    assert fid.generalized_bures_sq(P, Q, R) == fid.generalized_bures_sq(Q, P, R)


@given(triple())
def test_bures_at_least_bw_distance(PQR):
    P, Q, R = PQR
    assert fid.generalized_bures_sq(P, Q, R) >= squared_distance(BW, P, Q) - 1e-10 * np.trace(P + Q).real


def test_unitary_factor():
    P, R = la.random_positive(3, 1), la.random_positive(3, 2)
    np.testing.assert_allclose(fid.unitary_factor(P, P, R), np.eye(3), atol=1e-12)
    Q = la.random_positive(3, 3)
    U = fid.unitary_factor(P, Q, geodesic_point(BW, P, Q, 0.4))
    np.testing.assert_allclose(U, la.polar_factor(la.sqrtm(P) @ la.sqrtm(Q)).conj().T, atol=1e-9)


@pytest.mark.parametrize("x, value", [(1.0, UHLMANN), (0.0, HOLEVO), (-1.0, MATSUMOTO)])
def test_polar_fidelity_anchors(x, value):
    assert fid.polar_fidelity(P0, Q0, x) == pytest.approx(value, abs=1e-14)


@given(density_pair(), st.floats(-1.0, 1.0))
def test_polar_fidelity_closed_form(PQ, x):
    P, Q = PQ
    avg = fid.polar_fidelity_average(P, Q, x)
    assert abs(avg.imag) < 1e-10
    assert fid.polar_fidelity(P, Q, x) == pytest.approx(avg.real, abs=1e-9)


def test_interior_oracles():
    v = fid.interior_fidelity(P0, Q0, Ensemble([P0, la.invm(P0)], [0.5, 0.5]))
    # mean of the Uhlmann and Matsumoto values
    assert v == pytest.approx(0.930617223233018, abs=1e-14)
    v = fid.interior_fidelity(P0, Q0, Ensemble([P0, Q0], [0.5, 0.5]))
    assert v == pytest.approx(UHLMANN, abs=1e-14)
    R = la.random_positive(2, 4)
    assert fid.interior_fidelity(P0, Q0, ([R], [1.0])) == pytest.approx(complex(fid.generalized_fidelity(P0, Q0, R)))


@given(triple())
def test_interior_unitary_form(PQR):
    P, Q, R = PQR
    ens = Ensemble([R, P, la.invm(Q)], [0.2, 0.3, 0.5])
    a, b = fid.interior_fidelity(P, Q, ens), fid.interior_fidelity_unitary(P, Q, ens)
    assert abs(a - b) <= 1e-9 * np.sqrt(np.trace(P).real * np.trace(Q).real)
    assert np.linalg.norm(fid.mean_unitary_factor(P, Q, ens), 2) <= 1 + 1e-10
