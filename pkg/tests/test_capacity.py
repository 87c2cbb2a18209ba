"""Tests for the closed-form capacity and efficiency formulas."""

import math
import warnings

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from afc_capacity import capacity as cap
from afc_capacity.errors import (
    ControlPulseDominates,
    ControlPulseWarning,
    InvalidParameter,
    ParameterWarning,
)

gammas = st.floats(1e5, 1e8)
delays = st.floats(1e-7, 1e-3)
t2s = st.floats(1e-6, 1e-2)
etas = st.floats(0.01, 0.99)


class TestModeBin:
    @pytest.mark.parametrize("gamma, expected", [(5e6, 500e-9), (4e6, 625e-9), (2.5, 1.0)])
    def test_values(self, gamma, expected):
        assert cap.mode_bin_from_bandwidth(gamma) == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("gamma", [0.0, -5e6, math.nan, math.inf])
    def test_rejects_bad_input(self, gamma):
        with pytest.raises(InvalidParameter):
            cap.mode_bin_from_bandwidth(gamma)


class TestFixedDelay:
    def test_praseodymium_forty_modes(self):
        report = cap.fixed_delay_capacity(4e6, 25e-6)
        assert report.n_continuous == 40.0
        assert report.n_floor == 40
        assert report.control_term == 0.0
        assert report.bandwidth_term == report.n_continuous

    def test_europium_hundred_modes(self):
        report = cap.fixed_delay_capacity(5e6, 50.7e-6)
        assert report.n_continuous == pytest.approx(101.4, abs=0.1)
        assert report.n_floor == 101

    @given(gammas)
    def test_single_mode_boundary(self, gamma):
        assert cap.fixed_delay_capacity(gamma, 2.5 / gamma).n_continuous == pytest.approx(1.0)

    def test_carries_t2_efficiency(self):
        report = cap.fixed_delay_capacity(5e6, 50e-6, t2=250e-6)
        assert report.relative_efficiency == pytest.approx(math.exp(-0.8))

    @given(gammas, delays, st.floats(1.01, 10))
    def test_strictly_increasing(self, gamma, delay, factor):
        base = cap.fixed_delay_capacity(gamma, delay).n_continuous
        assert cap.fixed_delay_capacity(gamma * factor, delay).n_continuous > base
        assert cap.fixed_delay_capacity(gamma, delay * factor).n_continuous > base

    @given(gammas, delays)
    def test_tooth_count_form(self, gamma, delay):
        n_tooth = gamma * delay
        assert cap.fixed_delay_capacity(gamma, delay).n_continuous == pytest.approx(
            n_tooth / 2.5, rel=1e-12)


class TestT2Efficiency:
    def test_europium(self):
        assert cap.t2_relative_efficiency(50e-6, 250e-6) == pytest.approx(0.449, abs=5e-4)

    def test_praseodymium(self):
        assert cap.t2_relative_efficiency(25e-6, 92e-6) == pytest.approx(0.337, abs=5e-4)

    def test_zero_delay(self):
        assert cap.t2_relative_efficiency(0.0, 1e-3) == 1.0

    @given(delays, t2s, st.floats(1.01, 10))
    def test_monotone(self, delay, t2, factor):
        eta = cap.t2_relative_efficiency(delay, t2)
        assume(0 < eta < 1)
        assert cap.t2_relative_efficiency(delay * factor, t2) < eta
        assert cap.t2_relative_efficiency(delay, t2 * factor) > eta


class TestDelayForEfficiency:
    def test_inverts_europium_example(self):
        eta = cap.t2_relative_efficiency(50e-6, 250e-6)
        assert cap.delay_for_efficiency(eta, 250e-6) == pytest.approx(50e-6, rel=1e-12)

    def test_exponent_four(self):
        assert cap.delay_for_efficiency(math.exp(-4), 1e-4) == pytest.approx(1e-4, rel=1e-12)

    def test_ninety_percent(self):
        assert cap.delay_for_efficiency(0.9, 250e-6) == pytest.approx(6.585e-6, abs=1e-9)

    @pytest.mark.parametrize("eta", [0.0, 1.0, -0.1, 1.5])
    def test_eta_bounds(self, eta):
        with pytest.raises(InvalidParameter):
            cap.delay_for_efficiency(eta, 1e-4)

    @given(etas, t2s)
    def test_round_trip(self, eta, t2):
        delay = cap.delay_for_efficiency(eta, t2)
        assert cap.t2_relative_efficiency(delay, t2) == pytest.approx(eta, rel=1e-12)


class TestCapacityAtEfficiency:
    def test_thirteen_modes(self):
        report = cap.fixed_delay_capacity_at_efficiency(0.9, 250e-6, 5e6)
        assert report.n_continuous == pytest.approx(13.2, abs=0.1)
        assert report.n_floor == 13
        assert report.reported == 13

    def test_twenty_eight_modes(self):
        report = cap.fixed_delay_capacity_at_efficiency(0.8, 250e-6, 5e6)
        assert report.n_continuous == pytest.approx(27.9, abs=0.1)
        assert report.near_integer_flag
        assert report.reported == 28

    def test_usable_fraction(self):
        report = cap.fixed_delay_capacity_at_efficiency(0.9, 1e-3, 1e7)
        assert report.n_continuous / (1e7 * 1e-3) == pytest.approx(0.0105, abs=1e-4)

    @given(etas, t2s, gammas)
    def test_identity_with_fixed_delay(self, eta, t2, gamma):
        direct = cap.fixed_delay_capacity_at_efficiency(eta, t2, gamma).n_continuous
        composed = cap.fixed_delay_capacity(gamma, cap.delay_for_efficiency(eta, t2))
        assert direct == pytest.approx(composed.n_continuous, rel=1e-12)


class TestHshPulse:
    def test_exponent_four(self):
        ts = cap.hsh_square_duration(230e3, 1.5e6)
        assert cap.hsh_transfer_efficiency(ts, 230e3, 1.5e6) == pytest.approx(
            1 - math.exp(-4), rel=1e-14)
        assert 1 - math.exp(-4) == pytest.approx(0.9817, abs=1e-4)

    def test_zero_duration(self):
        assert cap.hsh_transfer_efficiency(0.0, 1e5, 1e6) == 0.0

    def test_square_duration_europium(self):
        ts = cap.hsh_square_duration(230e3, 1.5e6)
        assert ts == pytest.approx(11.5e-6, rel=0.01)
        assert ts == pytest.approx(11e-6, rel=0.05)
        assert 1.36 * ts == pytest.approx(15e-6, rel=0.05)

    def test_zero_exponent(self):
        assert cap.hsh_square_duration(1e5, 1e6, exponent=0) == 0.0

    def test_warns_outside_adiabatic_regime(self):
        with pytest.warns(ParameterWarning):
            cap.hsh_transfer_efficiency(1e-6, 2e6, 1e6)

    @given(st.floats(0, 1e-3), st.floats(1e3, 1e6), st.floats(2e6, 1e8))
    def test_range(self, ts, omega, gamma):
        eta = cap.hsh_transfer_efficiency(ts, omega, gamma)
        assert 0.0 <= eta <= 1.0
        # below the saturation of float64 the bound is strict
        if math.pi ** 2 * ts * omega ** 2 / gamma < 30:
            assert eta < 1.0

    @given(st.floats(1e-7, 1e-5), st.floats(1e3, 1e5), st.floats(2e6, 1e8),
           st.floats(1.01, 2))
    def test_monotone(self, ts, omega, gamma, k):
        eta = cap.hsh_transfer_efficiency(ts, omega, gamma)
        assume(1e-12 < eta < 0.999)
        assert cap.hsh_transfer_efficiency(ts * k, omega, gamma) > eta
        assert cap.hsh_transfer_efficiency(ts, omega * k, gamma) > eta
        assert cap.hsh_transfer_efficiency(ts, omega, gamma * k) < eta


class TestSpinWave:
    @pytest.mark.parametrize("args, expected, tol", [
        ((1.5e6, 25e-6, 230e3, 1.36), 5.62, 0.05),
        ((1.5e6, 25e-6, 250e3, 1.36), 7.06, 0.1),
        ((4e6, 25e-6, 410e3, 1.36), 19.0, 0.2),
    ])
    def test_worked_examples(self, args, expected, tol):
        assert cap.spin_wave_capacity(*args).n_continuous == pytest.approx(expected, abs=tol)

    def test_terms_exposed(self):
        report = cap.spin_wave_capacity(1.5e6, 25e-6, 230e3, 1.36)
        assert report.bandwidth_term == pytest.approx(15.0)
        control = 1.36 * 4 / math.pi ** 2 * 1.5e6 ** 2 / 230e3 ** 2 / 2.5
        assert report.control_term == pytest.approx(control, rel=1e-12)

    def test_clamps_with_warning(self):
        with pytest.warns(ControlPulseWarning):
            report = cap.spin_wave_capacity(1.5e6, 2e-6, 50e3, 1.36)
        assert report.n_continuous == 0.0
        assert report.n_floor == 0
        assert "ControlPulseDominates" in report.warnings

    def test_chi_below_one(self):
        with pytest.raises(InvalidParameter):
            cap.spin_wave_capacity(1.5e6, 25e-6, 230e3, 0.5)

    @given(gammas, delays, st.floats(1e3, 1e7), st.floats(1, 3))
    def test_never_exceeds_fixed_delay(self, gamma, delay, omega, chi):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            sw = cap.spin_wave_capacity(gamma, delay, omega, chi).n_continuous
        assert sw <= cap.fixed_delay_capacity(gamma, delay).n_continuous

    def test_approaches_fixed_delay_for_strong_drive(self):
        fixed = cap.fixed_delay_capacity(1.5e6, 25e-6).n_continuous
        with pytest.warns(ParameterWarning):
            strong = cap.spin_wave_capacity(1.5e6, 25e-6, 1e9, 1.36).n_continuous
        assert strong == pytest.approx(fixed, rel=1e-6)


class TestSpinWaveExplicit:
    def test_europium_measured_pulse(self):
        assert cap.spin_wave_capacity_explicit(41e-6, 14e-6, 0.5e-6).n_continuous == 54.0

    def test_praseodymium_measured_pulse(self):
        assert cap.spin_wave_capacity_explicit(25e-6, 5e-6, 0.625e-6).n_continuous == 32.0

    @given(delays, st.floats(1e-8, 1e-5))
    def test_zero_pulse_reduces_to_fixed_delay(self, delay, tm):
        report = cap.spin_wave_capacity_explicit(delay, 0.0, tm)
        assert report.n_continuous == pytest.approx(delay / tm, rel=1e-12)

    def test_pulse_longer_than_delay(self):
        with pytest.raises(ControlPulseDominates):
            cap.spin_wave_capacity_explicit(10e-6, 10e-6, 0.5e-6)


class TestSpinWaveAtEfficiency:
    def test_europium_example(self):
        # delay_for_efficiency(exp(-0.4), 250 us) is the 25 us storage window
        report = cap.spin_wave_capacity_at_efficiency(math.exp(-0.4), 250e-6, 1.5e6,
                                                      230e3, 1.36)
        assert report.n_continuous == pytest.approx(5.62, abs=0.01)

    @given(etas, t2s, st.floats(1e5, 1e7), st.floats(1e3, 1e6), st.floats(1, 3))
    def test_identity_with_eq_six(self, eta, t2, gamma, omega, chi):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            direct = cap.spin_wave_capacity_at_efficiency(eta, t2, gamma, omega, chi)
            composed = cap.spin_wave_capacity(gamma, cap.delay_for_efficiency(eta, t2),
                                              omega, chi)
        assert direct.bandwidth_term == pytest.approx(composed.bandwidth_term, rel=1e-12)
        assert direct.control_term == pytest.approx(composed.control_term, rel=1e-12)
        assert direct.n_continuous == pytest.approx(composed.n_continuous, rel=1e-12,
                                                    abs=1e-9)

    def test_near_unit_efficiency_clamps(self):
        with pytest.warns(ControlPulseWarning):
            report = cap.spin_wave_capacity_at_efficiency(0.9999, 250e-6, 1.5e6, 230e3, 1.36)
        assert report.n_continuous == 0.0


class TestSpinDephasing:
    def test_zero_time(self):
        assert cap.spin_dephasing_factor(0.0, 26.3e3) == 1.0

    @pytest.mark.parametrize("t_spin, measured, expected", [
        (14.1e-6, 0.0188, 0.0347), (20.7e-6, 0.0063, 0.0236)])
    def test_rescaled_linewidth(self, t_spin, measured, expected):
        gain = (cap.spin_dephasing_factor(t_spin, 16.1e3)
                / cap.spin_dephasing_factor(t_spin, 26.3e3))
        assert measured * gain == pytest.approx(expected, abs=1e-3)

    def test_half_width_point(self):
        # at pi*T*gamma = sqrt(2 ln2 * ln2) the factor is 1/2
        t = math.sqrt(2) * math.log(2) / (math.pi * 1e4)
        assert cap.spin_dephasing_factor(t, 1e4) == pytest.approx(0.5, rel=1e-12)


class TestEchoEfficiency:
    def test_zero_depth(self):
        assert cap.afc_echo_efficiency(0.0, 3.0) == 0.0

    def test_unnormalised_sinc(self):
        f = 4.0
        expected = (1 - math.exp(-5.8 / f)) ** 2 * (math.sin(math.pi / f) / (math.pi / f)) ** 2
        assert cap.afc_echo_efficiency(5.8, f) == pytest.approx(expected, rel=1e-14)

    def test_asymptote(self):
        assert cap.afc_echo_efficiency(1e6, 1e3) == pytest.approx(1.0, abs=1e-5)

    def test_vectorised(self):
        grid = np.linspace(1, 50, 11)
        np.testing.assert_allclose(cap.afc_echo_efficiency(5.8, grid),
                                   [cap.afc_echo_efficiency(5.8, f) for f in grid])

    @given(st.floats(0.01, 100), st.floats(1, 1e3))
    def test_range(self, od, finesse):
        assert 0.0 <= cap.afc_echo_efficiency(od, finesse) < 1.0

    @pytest.mark.parametrize("od", [0.5, 5.8, 10, 40])
    def test_single_interior_maximum(self, od):
        eta = cap.afc_echo_efficiency(od, np.linspace(1, 200, 20001))
        rises = np.diff(eta) > 0
        i = int(np.argmax(eta))
        assert 0 < i < eta.size - 1
        assert rises[:i].all() and not rises[i:].any()

    @pytest.mark.parametrize("od, finesse", [(-1, 3), (5, 0.5), (math.nan, 3)])
    def test_invalid(self, od, finesse):
        with pytest.raises(InvalidParameter):
            cap.afc_echo_efficiency(od, finesse)
