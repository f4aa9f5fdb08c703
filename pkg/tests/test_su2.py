import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nvactuator.su2 import (
    IDENTITY2,
    PAULI_X,
    TWO_PI,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    Axis,
    Rotation,
    Unitary,
    compose,
    fidelity,
    goal,
    infidelity,
    matrix_product,
    qmul,
    qpow,
    random_unitary,
    rot_unitary,
)

angles = st.floats(0.0, TWO_PI, exclude_max=True, allow_nan=False)
seeds = st.integers(0, 2**32 - 1)


def random_rotations(rng, k):
    out = []
    for _ in range(k):
        v = rng.normal(size=3)
        out.append(Rotation(Axis.from_vector(v), float(rng.uniform(0, TWO_PI))))
    return out


def same_up_to_sign(a, b, atol=1e-12):
    return np.allclose(a, b, atol=atol) or np.allclose(a, -b, atol=atol)


# -- rot_unitary -------------------------------------------------------------

def test_zero_angle_is_identity():
    assert rot_unitary(Rotation(Z_AXIS, 0.0)).isclose(Unitary.identity(), up_to_sign=False)


def test_full_turn_is_minus_identity_quaternion():
    u = rot_unitary(Z_AXIS, TWO_PI)
    assert np.allclose(u.q, [-1, 0, 0, 0], atol=1e-15)
    assert np.allclose(u.matrix(), -IDENTITY2, atol=1e-15)
    # acts as identity on states
    assert fidelity(u, Unitary.identity()) == pytest.approx(1.0, abs=1e-15)


def test_x_pi_is_minus_i_sigma_x():
    u = rot_unitary(Rotation(X_AXIS, math.pi))
    assert np.allclose(u.matrix(), -1j * PAULI_X, atol=1e-15)
    assert u.isclose(goal("X", math.pi), up_to_sign=False)


def test_rotation_rejects_angle_out_of_range():
    with pytest.raises(ValueError):
        Rotation(Z_AXIS, TWO_PI)
    with pytest.raises(ValueError):
        Rotation(Z_AXIS, -0.1)


def test_axis_must_be_unit():
    with pytest.raises(ValueError):
        Axis(1.0, 1.0, 0.0)
    Axis(1.0, 0.0, 0.0)


def test_bloch_rotation_convention():
    # rotating +x by pi/2 about z sends it to +y
    u = rot_unitary(Z_AXIS, math.pi / 2).matrix()
    from nvactuator.su2 import PAULI_Y
    assert np.allclose(u @ PAULI_X @ u.conj().T, PAULI_Y, atol=1e-14)


# -- compose -----------------------------------------------------------------

def test_compose_empty_is_identity():
    assert compose([]).isclose(Unitary.identity(), up_to_sign=False)


def test_same_axis_angles_add():
    half = Rotation(X_AXIS, math.pi / 2)
    assert compose([half, half]).isclose(goal("X", math.pi), up_to_sign=False)


def test_compose_order_first_is_rightmost():
    a, b = Rotation(X_AXIS, 0.7), Rotation(Y_AXIS, 1.9)
    expected = rot_unitary(b).matrix() @ rot_unitary(a).matrix()
    assert np.allclose(compose([a, b]).matrix(), expected, atol=1e-14)


def test_compose_random_five_matches_matrix_product():
    rng = np.random.default_rng(5)
    rs = random_rotations(rng, 5)
    assert np.allclose(compose(rs).matrix(), matrix_product(rs), atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 6), st.integers(0, 6))
def test_compose_distributes_over_concatenation(seed, ka, kb):
    rng = np.random.default_rng(seed)
    a, b = random_rotations(rng, ka), random_rotations(rng, kb)
    lhs = compose(a + b).matrix()
    rhs = compose(b).matrix() @ compose(a).matrix()
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_quaternion_and_matrix_paths_agree_on_many_compositions():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(10_000):
        rs = random_rotations(rng, int(rng.integers(1, 6)))
        q = compose(rs).matrix()
        m = matrix_product(rs)
        worst = max(worst, float(np.abs(q - m).max()))
    assert worst <= 1e-12


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_unitary_invariants(seed):
    u = random_unitary(np.random.default_rng(seed))
    assert np.linalg.norm(u.q) == pytest.approx(1.0, abs=1e-12)
    m = u.matrix()
    assert np.allclose(m @ m.conj().T, IDENTITY2, atol=1e-12)
    assert abs(np.linalg.det(m) - 1.0) <= 1e-12
    assert Unitary.from_matrix(m).isclose(u, atol=1e-12, up_to_sign=False)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_hamilton_product_equals_matrix_product(seed):
    rng = np.random.default_rng(seed)
    a, b = random_unitary(rng), random_unitary(rng)
    prod = Unitary.from_matrix(a.matrix() @ b.matrix())
    assert same_up_to_sign((a @ b).q, prod.q)


def test_qpow_matches_repeated_product():
    rng = np.random.default_rng(3)
    q = random_unitary(rng).q
    acc = np.array([1.0, 0, 0, 0])
    for k in range(12):
        assert np.allclose(qpow(q, k), acc, atol=1e-12)
        acc = qmul(q, acc)


def test_canonical_sign():
    u = Unitary((-0.6, 0.0, 0.8, 0.0))
    assert u.canonical() == (0.6, -0.0, -0.8, -0.0)
    v = Unitary((0.0, -1.0, 0.0, 0.0))
    assert v.canonical()[1] == 1.0


# -- fidelity ----------------------------------------------------------------

def test_fidelity_self_is_one():
    u = random_unitary(np.random.default_rng(1))
    assert fidelity(u, u) == pytest.approx(1.0, abs=1e-15)


def test_fidelity_identity_vs_x_pi_is_zero():
    assert fidelity(Unitary.identity(), goal("X", math.pi)) == pytest.approx(0.0, abs=1e-15)


def test_fidelity_small_angle_series():
    d = 1e-6
    f = fidelity(goal("X", math.pi / 2), goal("X", math.pi / 2 + d))
    # independent oracle: F = |cos(d/2)| = 1 - d^2/8 + ...
    assert f == pytest.approx(1.0 - d * d / 8.0, abs=1e-15)
    assert 1.0 - f < 1e-12


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_fidelity_symmetric_bounded_and_conjugation_invariant(seed):
    rng = np.random.default_rng(seed)
    u, g, v = random_unitary(rng), random_unitary(rng), random_unitary(rng)
    f = fidelity(u, g)
    assert 0.0 <= f <= 1.0
    assert f == pytest.approx(fidelity(g, u), abs=1e-12)
    f2 = fidelity(v @ u @ v.dagger(), v @ g @ v.dagger())
    assert f2 == pytest.approx(f, abs=1e-12)
    # trace definition
    tr = abs(np.trace(u.matrix() @ g.matrix().conj().T)) / 2
    assert f == pytest.approx(tr, abs=1e-12)
    assert infidelity(u, g) == pytest.approx(1 - f, abs=1e-15)


# -- goal --------------------------------------------------------------------

def test_goal_y_pi_is_pi_about_y():
    u = goal("Y", math.pi)
    assert np.allclose(u.q, [0, 0, 1, 0], atol=1e-15)
    axis, ang = u.axis_angle()
    assert ang == pytest.approx(math.pi)
    assert np.allclose(axis.vector, [0, 1, 0])


def test_goal_z_zero_is_identity():
    assert goal("Z", 0.0).isclose(Unitary.identity(), up_to_sign=False)


def test_goal_axis_angle_matches_rot_unitary():
    v1 = Axis.from_vector((math.sin(0.4), 0.0, math.cos(0.4)))
    assert goal("axis-angle", 1.3, v1).isclose(rot_unitary(Rotation(v1, 1.3)), up_to_sign=False)


@pytest.mark.parametrize("theta", [-0.1, TWO_PI, 7.0, float("nan")])
def test_goal_rejects_out_of_range(theta):
    with pytest.raises(ValueError):
        goal("X", theta)


def test_goal_rejects_unknown_kind():
    with pytest.raises(ValueError):
        goal("W", 1.0)
    with pytest.raises(ValueError):
        goal("axis-angle", 1.0)
