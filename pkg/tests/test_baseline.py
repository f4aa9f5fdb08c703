import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nvactuator.baseline import equal_time_best, equal_time_unitary
from nvactuator.physics import ControlFrame, FieldConfig, HyperfineSpin, control_frame
from nvactuator.su2 import compose, goal, matrix_product
from nvactuator.synthesis import synthesize

NEAR_FRAME = control_frame(HyperfineSpin("near", 1.98, 0.51), FieldConfig(500.0, 1))


def test_unitary_is_alternating_product_starting_on_v0():
    fr = NEAR_FRAME
    tau = 0.37
    rs = [(fr.axis(k % 2), 2 * math.pi * fr.frequency(k % 2) * tau) for k in range(5)]
    assert np.allclose(equal_time_unitary(tau, 5, fr).matrix(), matrix_product(rs), atol=1e-12)


def test_round_trip_eight_periods():
    fr = NEAR_FRAME
    tau = 0.8134
    g = equal_time_unitary(tau, 8, fr)
    res = equal_time_best(g, fr, n_max=20)
    assert res.infidelity <= 1e-10
    assert res.total_time <= 8 * tau * (1 + 1e-7)
    assert res.total_time == pytest.approx(res.n * res.tau, rel=1e-12)
    assert res.infidelity >= 0.0


@settings(max_examples=6, deadline=None)
@given(st.floats(0.05, 2.0), st.integers(1, 12))
def test_round_trip_random(tau, n):
    fr = ControlFrame.from_alpha_kappa(0.6, 0.4, 0.5)
    g = equal_time_unitary(tau, n, fr)
    res = equal_time_best(g, fr, n_max=12, tau_max=2.0)
    assert res.infidelity <= 1e-10
    # tau is pinned by a quadratic minimum, so only to ~1e-8 relative
    assert res.total_time <= n * tau * (1 + 1e-7)


def test_overhead_added_per_switch():
    fr = NEAR_FRAME
    g = equal_time_unitary(0.5, 4, fr)
    res = equal_time_best(g, fr, n_max=6, overhead_ns=10.0)
    assert res.total_time == pytest.approx(res.n * res.tau + (res.n - 1) * 0.01, rel=1e-12)


def test_caps_must_be_positive():
    with pytest.raises(ValueError):
        equal_time_best(goal("Y", 1.0), NEAR_FRAME, n_max=0)
    with pytest.raises(ValueError):
        equal_time_best(goal("Y", 1.0), NEAR_FRAME, tau_max=-1.0)


def test_small_alpha_beats_large_alpha():
    g = goal("Y", math.pi)
    small = equal_time_best(g, NEAR_FRAME, n_max=60)
    wide = equal_time_best(g, ControlFrame.from_alpha_kappa(math.radians(60), NEAR_FRAME.kappa, NEAR_FRAME.omega0),
                           n_max=60)
    assert small.best_infidelity < wide.best_infidelity


@pytest.mark.parametrize("seed", range(4))
def test_never_faster_than_optimal_when_accurate(seed):
    rng = np.random.default_rng(seed)
    fr = NEAR_FRAME
    g = equal_time_unitary(float(rng.uniform(0.2, 1.5)), int(rng.integers(2, 10)), fr)
    eq = equal_time_best(g, fr, n_max=12)
    opt = synthesize(g, fr)
    if eq.infidelity <= 1e-6:
        assert eq.total_time >= opt.time * (1 - 1e-9)
