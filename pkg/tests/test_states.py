import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blochaffect import (
    BlochVector,
    DensityMatrix,
    Ensemble,
    PureState,
    basis_state,
    bloch_from_density,
    bloch_from_pure,
    density_from_pure,
    eigen2,
    inner_product,
    mix,
    pure_from_angles,
    purity,
    reduced_qubit_density,
    tensor,
)

SQRT2_INV = 1.0 / math.sqrt(2.0)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def plus_x():
    return PureState(1, np.array([SQRT2_INV, SQRT2_INV]))


def random_single_qubit_ensemble(rng, members=2):
    states = [pure_from_angles(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)) for _ in range(members)]
    weights = rng.dirichlet(np.ones(members))
    return Ensemble(tuple((float(w), s) for w, s in zip(weights, states)))


# ---------------------------------------------------------------- basis_state

def test_basis_state_kets():
    assert np.array_equal(basis_state(1, 0).amplitudes, [1, 0])
    assert np.array_equal(basis_state(1, 1).amplitudes, [0, 1])
    two = basis_state(2, 2)  # |10>
    assert two.amplitudes[2] == 1.0
    assert np.count_nonzero(two.amplitudes) == 1


@pytest.mark.parametrize("n,index", [(1, -1), (1, 2), (2, 4), (3, 8)])
def test_basis_state_index_out_of_range(n, index):
    with pytest.raises(ValueError):
        basis_state(n, index)


def test_desk_scale_cap():
    basis_state(8, 0)
    with pytest.raises(ValueError):
        basis_state(9, 0)
    with pytest.raises(ValueError):
        basis_state(0, 0)


# ------------------------------------------------------------ pure_from_angles

def test_pure_from_angles_north_pole_is_ket0():
    for phi in (0.0, 1.0, 5.0):
        state = pure_from_angles(0.0, phi)
        assert np.allclose(state.amplitudes, [1, 0], atol=1e-12)


def test_pure_from_angles_south_pole_is_ket1():
    for phi in (0.0, 2.0):
        state = pure_from_angles(math.pi, phi)
        assert abs(abs(state.amplitudes[1]) - 1.0) < 1e-12
        assert abs(state.amplitudes[0]) < 1e-12


def test_pure_from_angles_plus_y():
    state = pure_from_angles(math.pi / 2, math.pi / 2)
    assert np.allclose(state.amplitudes, [SQRT2_INV, 1j * SQRT2_INV], atol=1e-12)


@pytest.mark.parametrize("theta,phi", [(-0.1, 0.0), (math.pi + 0.1, 0.0), (0.0, -0.1), (0.0, 2 * math.pi)])
def test_pure_from_angles_range_errors(theta, phi):
    with pytest.raises(ValueError):
        pure_from_angles(theta, phi)


# ---------------------------------------------------------------- inner_product

def test_inner_product_orthonormal_kets():
    zero, one = basis_state(1, 0), basis_state(1, 1)
    assert inner_product(zero, one) == 0
    assert inner_product(one, zero) == 0
    assert inner_product(zero, zero) == 1


def test_inner_product_superposition():
    # Component arithmetic: conj(1)*1/sqrt(2) + conj(0)*1/sqrt(2).
    expected = SQRT2_INV
    assert inner_product(basis_state(1, 0), plus_x()) == pytest.approx(expected, abs=1e-12)


def test_inner_product_self_is_one():
    state = pure_from_angles(1.1, 2.2)
    assert inner_product(state, state) == pytest.approx(1.0, abs=1e-12)


def test_inner_product_dimension_mismatch():
    with pytest.raises(ValueError):
        inner_product(basis_state(1, 0), basis_state(2, 0))


# ---------------------------------------------------------------------- tensor

def test_tensor_basis_products():
    assert np.array_equal(tensor(basis_state(1, 0), basis_state(1, 1)).amplitudes, [0, 1, 0, 0])
    assert np.array_equal(tensor(basis_state(1, 1), basis_state(1, 0)).amplitudes, [0, 0, 1, 0])


def test_tensor_matches_manual_product():
    a, b = plus_x(), basis_state(1, 0)
    result = tensor(a, b)
    # Index-arithmetic oracle, independent of any library kron.
    manual = np.zeros(4, dtype=complex)
    for i in range(2):
        for j in range(2):
            manual[i * 2 + j] = a.amplitudes[i] * b.amplitudes[j]
    assert np.allclose(result.amplitudes, manual, atol=1e-12)
    assert result.n_qubits == 2


def test_tensor_rejects_oversized_register():
    with pytest.raises(ValueError):
        tensor(basis_state(5, 0), basis_state(4, 0))


# ------------------------------------------------------------ density and mix

def test_density_from_pure_projectors():
    assert np.allclose(density_from_pure(basis_state(1, 0)).entries, [[1, 0], [0, 0]])
    assert np.allclose(density_from_pure(basis_state(1, 1)).entries, [[0, 0], [0, 1]])


def test_density_from_pure_superposition():
    rho = density_from_pure(plus_x())
    # Outer-product oracle.
    amps = plus_x().amplitudes
    expected = np.array([[amps[0] * np.conj(amps[0]), amps[0] * np.conj(amps[1])],
                         [amps[1] * np.conj(amps[0]), amps[1] * np.conj(amps[1])]])
    assert np.allclose(rho.entries, expected, atol=1e-12)
    assert np.allclose(rho.entries, [[0.5, 0.5], [0.5, 0.5]], atol=1e-12)


def test_mix_degenerate_ensemble():
    rho = mix(Ensemble(((1.0, basis_state(1, 0)),)))
    assert np.allclose(rho.entries, density_from_pure(basis_state(1, 0)).entries)


def test_mix_maximally_mixed():
    rho = mix(Ensemble(((0.5, basis_state(1, 0)), (0.5, basis_state(1, 1)))))
    assert np.allclose(rho.entries, np.eye(2) / 2, atol=1e-12)


def test_mix_weighted_sum_oracle():
    rho = mix(Ensemble(((0.75, basis_state(1, 0)), (0.25, basis_state(1, 1)))))
    assert np.allclose(rho.entries, np.diag([0.75, 0.25]), atol=1e-12)


def test_mix_linearity():
    rng = np.random.default_rng(5)
    e1 = random_single_qubit_ensemble(rng)
    e2 = random_single_qubit_ensemble(rng)
    w = 0.3
    combined = Ensemble(
        tuple((w * wi, s) for wi, s in e1.members) + tuple(((1 - w) * wi, s) for wi, s in e2.members)
    )
    expected = w * mix(e1).entries + (1 - w) * mix(e2).entries
    assert np.allclose(mix(combined).entries, expected, atol=1e-9)


def test_ensemble_validation():
    with pytest.raises(ValueError):
        Ensemble(())
    with pytest.raises(ValueError):
        Ensemble(((0.5, basis_state(1, 0)),))  # weights must sum to 1
    with pytest.raises(ValueError):
        Ensemble(((-0.1, basis_state(1, 0)), (1.1, basis_state(1, 1))))
    with pytest.raises(ValueError):
        Ensemble(((0.5, basis_state(1, 0)), (0.5, basis_state(2, 0))))


# --------------------------------------------------------------------- purity

def test_purity_pure_state():
    assert purity(density_from_pure(basis_state(1, 0))) == pytest.approx(1.0, abs=1e-12)


def test_purity_maximally_mixed():
    rho = mix(Ensemble(((0.5, basis_state(1, 0)), (0.5, basis_state(1, 1)))))
    assert purity(rho) == pytest.approx(0.5, abs=1e-12)


def test_purity_weighted_diag():
    rho = mix(Ensemble(((0.75, basis_state(1, 0)), (0.25, basis_state(1, 1)))))
    # Matrix oracle: Tr(rho @ rho) computed explicitly here.
    expected = float(np.real(np.trace(np.diag([0.75, 0.25]) @ np.diag([0.75, 0.25]))))
    assert expected == pytest.approx(0.625, abs=1e-15)
    assert purity(rho) == pytest.approx(expected, abs=1e-12)


def test_purity_bounds_random_ensembles():
    rng = np.random.default_rng(11)
    for _ in range(200):
        ensemble = random_single_qubit_ensemble(rng, members=int(rng.integers(1, 4)))
        rho = mix(ensemble)
        p = purity(rho)
        assert 0.5 - 1e-9 <= p <= 1.0 + 1e-9
        assert bloch_from_density(rho).length <= 1.0 + 1e-9


def test_purity_bounds_random_register_ensembles():
    rng = np.random.default_rng(13)
    for _ in range(100):
        members = []
        weights = rng.dirichlet(np.ones(3))
        for w in weights:
            raw = rng.normal(size=4) + 1j * rng.normal(size=4)
            members.append((float(w), PureState(2, raw / np.linalg.norm(raw))))
        p = purity(mix(Ensemble(tuple(members))))
        assert 0.25 - 1e-9 <= p <= 1.0 + 1e-9


# --------------------------------------------------------------------- eigen2

def test_eigen2_projector_spectrum():
    values, _ = eigen2(density_from_pure(basis_state(1, 0)))
    assert values == pytest.approx((1.0, 0.0), abs=1e-12)


def test_eigen2_degenerate():
    rho = mix(Ensemble(((0.5, basis_state(1, 0)), (0.5, basis_state(1, 1)))))
    values, vectors = eigen2(rho)
    assert values == pytest.approx((0.5, 0.5), abs=1e-12)
    assert abs(inner_product(vectors[0], vectors[1])) < 1e-9


def test_eigen2_plus_projector():
    # Characteristic polynomial of [[.5,.5],[.5,.5]]: l^2 - l = 0 -> 1, 0.
    rho = density_from_pure(plus_x())
    values, vectors = eigen2(rho)
    assert values == pytest.approx((1.0, 0.0), abs=1e-12)
    assert abs(inner_product(vectors[0], plus_x())) == pytest.approx(1.0, abs=1e-9)


def test_eigen2_requires_single_qubit():
    rho = density_from_pure(basis_state(2, 0))
    with pytest.raises(ValueError):
        eigen2(rho)


def test_eigen2_reconstruction_random():
    rng = np.random.default_rng(23)
    for _ in range(50):
        rho = mix(random_single_qubit_ensemble(rng))
        values, vectors = eigen2(rho)
        assert values[0] + values[1] == pytest.approx(1.0, abs=1e-9)
        assert values[1] >= -1e-9
        rebuilt = sum(
            lam * np.outer(v.amplitudes, v.amplitudes.conj()) for lam, v in zip(values, vectors)
        )
        assert np.allclose(rebuilt, rho.entries, atol=1e-8)
        assert abs(inner_product(vectors[0], vectors[1])) < 1e-9


# ----------------------------------------------------------------- Bloch maps

def as_tuple(point):
    return (point.x, point.y, point.z)


def test_bloch_from_pure_axis_table():
    assert as_tuple(bloch_from_pure(basis_state(1, 0))) == pytest.approx((0, 0, 1), abs=1e-12)
    assert as_tuple(bloch_from_pure(plus_x())) == pytest.approx((1, 0, 0), abs=1e-12)
    minus_y = PureState(1, np.array([SQRT2_INV, -1j * SQRT2_INV]))
    assert as_tuple(bloch_from_pure(minus_y)) == pytest.approx((0, -1, 0), abs=1e-12)


def test_bloch_from_pure_rejects_registers():
    with pytest.raises(ValueError):
        bloch_from_pure(basis_state(2, 0))


def test_bloch_from_density_depolarized():
    rho = mix(Ensemble(((0.5, basis_state(1, 0)), (0.5, basis_state(1, 1)))))
    assert as_tuple(bloch_from_density(rho)) == pytest.approx((0, 0, 0), abs=1e-12)


def test_bloch_from_density_consistent_with_pure():
    rng = np.random.default_rng(3)
    for _ in range(50):
        state = pure_from_angles(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
        a = bloch_from_pure(state)
        b = bloch_from_density(density_from_pure(state))
        assert (a.x, a.y, a.z) == pytest.approx((b.x, b.y, b.z), abs=1e-9)


def test_bloch_from_density_trace_oracle():
    rho = mix(Ensemble(((0.75, basis_state(1, 0)), (0.25, basis_state(1, 1)))))
    point = bloch_from_density(rho)
    expected = tuple(float(np.real(np.trace(rho.entries @ pauli))) for pauli in (PAULI_X, PAULI_Y, PAULI_Z))
    assert (point.x, point.y, point.z) == pytest.approx(expected, abs=1e-12)
    assert (point.x, point.y, point.z) == pytest.approx((0, 0, 0.5), abs=1e-12)


def test_bloch_from_density_rejects_registers():
    with pytest.raises(ValueError):
        bloch_from_density(density_from_pure(basis_state(2, 0)))


def test_purity_one_iff_unit_length():
    rng = np.random.default_rng(17)
    for _ in range(300):
        rho = mix(random_single_qubit_ensemble(rng))
        pure = abs(purity(rho) - 1.0) <= 1e-6
        unit = abs(bloch_from_density(rho).length - 1.0) <= 1e-6
        assert pure == unit


@given(
    theta=st.floats(0.0, math.pi),
    phi=st.floats(0.0, 2 * math.pi, exclude_max=True),
    gamma=st.floats(0.0, 2 * math.pi),
)
@settings(max_examples=60, deadline=None)
def test_global_phase_invariance(theta, phi, gamma):
    state = pure_from_angles(theta, phi)
    shifted = PureState(1, np.exp(1j * gamma) * state.amplitudes)
    a, b = bloch_from_pure(state), bloch_from_pure(shifted)
    assert (a.x, a.y, a.z) == pytest.approx((b.x, b.y, b.z), abs=1e-9)


def test_angle_round_trip_grid():
    for theta in np.linspace(0.0, math.pi, 19):
        for phi in np.linspace(0.0, 2 * math.pi, 24, endpoint=False):
            point = bloch_from_pure(pure_from_angles(float(theta), float(phi)))
            expected = (math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta))
            assert (point.x, point.y, point.z) == pytest.approx(expected, abs=1e-9)
            assert point.length == pytest.approx(1.0, abs=1e-9)


# ----------------------------------------------------------- reduced densities

def test_reduced_density_of_product_state_is_pure():
    state = tensor(plus_x(), basis_state(1, 1))
    assert purity(reduced_qubit_density(state, 0)) == pytest.approx(1.0, abs=1e-9)
    assert purity(reduced_qubit_density(state, 1)) == pytest.approx(1.0, abs=1e-9)


def test_reduced_density_qubit_out_of_range():
    with pytest.raises(ValueError):
        reduced_qubit_density(basis_state(2, 0), 2)


# ----------------------------------------------------------------- validation

def test_pure_state_validation():
    with pytest.raises(ValueError):
        PureState(1, np.array([1.0, 1.0]))  # not normalized
    with pytest.raises(ValueError):
        PureState(1, np.array([np.nan, 0.0]))
    with pytest.raises(ValueError):
        PureState(2, np.array([1.0, 0.0]))  # wrong length


def test_pure_state_amplitudes_frozen():
    state = basis_state(1, 0)
    with pytest.raises(ValueError):
        state.amplitudes[0] = 0.0


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(2, np.array([[1.0, 0.5], [0.0, 0.0]]))  # not Hermitian
    with pytest.raises(ValueError):
        DensityMatrix(2, np.array([[0.8, 0.0], [0.0, 0.0]]))  # trace != 1
    with pytest.raises(ValueError):
        DensityMatrix(2, np.array([[1.5, 0.0], [0.0, -0.5]]))  # negative eigenvalue


def test_bloch_vector_validation_and_angles():
    with pytest.raises(ValueError):
        BlochVector(1.0, 1.0, 1.0)
    north = BlochVector(0.0, 0.0, 1.0)
    assert north.theta == pytest.approx(0.0)
    assert north.phi == 0.0
    origin = BlochVector(0.0, 0.0, 0.0)
    assert origin.theta == 0.0 and origin.phi == 0.0
    west = BlochVector(0.0, -1.0, 0.0)
    assert west.phi == pytest.approx(3 * math.pi / 2, abs=1e-12)
    assert west.theta == pytest.approx(math.pi / 2, abs=1e-12)
