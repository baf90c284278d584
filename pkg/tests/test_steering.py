import math

import numpy as np
import pytest

from drivenqubit.dynamics import DrivingProtocol, NoiseModel
from drivenqubit.steering import (
    steering_bound,
    steering_delta_derivative,
    steering_extrema,
    steering_point,
    steering_value,
)

# first root of 2 exp(-0.12 t) cos^2 t = 1, from scipy.optimize.brentq at xtol 1e-15
FIRST_CROSSING_G006 = 0.7389680930670552


def test_zero_time():
    assert steering_value(0.0, DrivingProtocol(1.3, -0.4), NoiseModel(0.2)) == 2.0


def test_undriven_quarter_turn():
    assert steering_value(math.pi / 2, DrivingProtocol(1.0, 0.0), NoiseModel(0.06)) == pytest.approx(0.0, abs=1e-30)


def test_bound():
    assert steering_bound(0.0, NoiseModel(0.5)) == 2.0
    np.testing.assert_array_equal(steering_bound(np.linspace(0, 9, 4), NoiseModel(0.0)), 2.0)


def test_three_quarter_turn_tailored_maximum():
    tau = 1.5 * math.pi
    d0, d1 = steering_extrema(2, tau, 1.0, NoiseModel(0.06))
    assert d1.delta == pytest.approx(4 / (9 * math.pi), abs=1e-15)
    assert round(d1.delta, 2) == 0.14
    assert d1.value == pytest.approx(2 * math.exp(-2 * 0.06 * tau), abs=1e-12)
    assert d1.value > 1


def test_undriven_resonance():
    d0, d1 = steering_extrema(0, 3.7, 0.0, NoiseModel(0.1))
    assert d1.delta == 0.0
    assert d1.value == pytest.approx(2 * math.exp(-0.2 * 3.7), abs=1e-15)


@pytest.mark.parametrize("k", range(-3, 4))
def test_extrema_values(k):
    tau, omega0, noise = 2.9, 0.8, NoiseModel(0.05)
    d0, d1 = steering_extrema(k, tau, omega0, noise)
    assert (d0.kind, d1.kind) == ("minimum", "maximum")
    assert d0.value == pytest.approx(0.0, abs=1e-12)
    assert d1.value == pytest.approx(float(steering_bound(tau, noise)), abs=1e-12)
    for e in (d0, d1):
        assert abs(steering_delta_derivative(tau, DrivingProtocol(omega0, e.delta), noise)) < 1e-12


def test_extrema_reject_zero_tau():
    with pytest.raises(ValueError):
        steering_extrema(0, 0.0, 1.0)


def test_derivative_at_zero_time():
    assert steering_delta_derivative(0.0, DrivingProtocol(1.0, 0.5), NoiseModel(0.1)) == 0.0


def test_derivative_finite_differences():
    rng = np.random.default_rng(9)
    tau = rng.uniform(0.1, 15, 300)
    drive_w0, d, g = rng.uniform(0, 2, 300), rng.uniform(-2, 2, 300), rng.uniform(0, 0.3, 300)
    noise = NoiseModel(g)
    h = 1e-5 / tau**2
    fd = (steering_value(tau, DrivingProtocol(drive_w0, d + h), noise) - steering_value(tau, DrivingProtocol(drive_w0, d - h), noise)) / (2 * h)
    np.testing.assert_allclose(steering_delta_derivative(tau, DrivingProtocol(drive_w0, d), noise), fd, atol=1e-6)


def test_first_violation_crossing():
    # bisection on S_2 - 1 for the undriven qubit at gamma = 0.06
    drive, noise = DrivingProtocol(1.0, 0.0), NoiseModel(0.06)
    lo, hi = 0.1, 1.5
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if steering_value(mid, drive, noise) > 1:
            lo = mid
        else:
            hi = mid
    assert lo == pytest.approx(FIRST_CROSSING_G006, abs=1e-6)
    assert steering_point(lo - 1e-3, drive, noise).violates_inequality
    assert not steering_point(hi + 1e-3, drive, noise).violates_inequality


def test_long_time_never_violates():
    taus = np.linspace(6, 60, 1000)
    assert np.all(steering_value(taus, DrivingProtocol(1.0, 0.3), NoiseModel(0.06)) <= 1)
