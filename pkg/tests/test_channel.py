import cmath
import math
from dataclasses import replace

import numpy as np
import pytest

from jamscope.sim.channel import (
    SPEED_OF_LIGHT, RadioConfig, RayGeometry, RayKind, complex_noise, dbm_to_mw, doppler_shift, draw_rayleigh,
    make_tap, mw_to_dbm, path_gain, received_sample, tap_matrix, tap_vector,
)
from jamscope.util.errors import ConfigError, DomainError, ShapeError


def los(dist, aod_cos=1.0):
    return RayGeometry(RayKind.LOS, dist, aod_cos)


def nlos(dist, aod_cos=1.0):
    return RayGeometry(RayKind.NLOS, dist, aod_cos)


class TestDoppler:
    def test_highway_speed_at_5_9_ghz(self):
        assert doppler_shift(33.333, 1.0, 5.9e9) == pytest.approx(655.5, abs=0.1)
        assert doppler_shift(120 / 3.6, 1.0, 5.9e9) == pytest.approx(655.5, abs=0.1)

    def test_zero_relative_speed_or_perpendicular_ray(self):
        assert doppler_shift(0.0, 1.0, 5.9e9) == 0.0
        assert doppler_shift(25.0, 0.0, 5.9e9) == 0.0

    def test_sign_follows_angle(self):
        assert doppler_shift(10.0, -1.0, 5.9e9) == pytest.approx(-doppler_shift(10.0, 1.0, 5.9e9))

    def test_linear_in_speed(self):
        assert doppler_shift(10.0, 0.5, 5.9e9) == pytest.approx(2 * doppler_shift(5.0, 0.5, 5.9e9))


class TestPathGain:
    def test_inverse_square(self):
        assert path_gain(1.0) == 1.0
        assert path_gain(10.0) == pytest.approx(0.01)
        assert path_gain(70.0) == pytest.approx(path_gain(35.0) / 4)

    @pytest.mark.parametrize("dist", [0.0, -3.0])
    def test_degenerate_distance(self, dist):
        with pytest.raises(DomainError):
            path_gain(dist)

    def test_ray_geometry_validation(self):
        with pytest.raises(DomainError):
            los(0.0)
        with pytest.raises(DomainError):
            los(10.0, aod_cos=1.5)

    def test_excess_delay(self):
        assert los(300.0).excess_delay == pytest.approx(300.0 / SPEED_OF_LIGHT)


class TestPowerUnits:
    def test_dbm(self):
        assert mw_to_dbm(100.0) == pytest.approx(20.0)
        assert mw_to_dbm(1.0) == pytest.approx(0.0)
        assert dbm_to_mw(-86.0) == pytest.approx(2.5119e-9, rel=1e-4)
        assert dbm_to_mw(mw_to_dbm(3.7e-7)) == pytest.approx(3.7e-7)


class TestMakeTap:
    def test_unit_distance_without_scatter(self):
        radio = RadioConfig()
        tap = make_tap(los(1.0), 0j, radio, 0.0)
        assert abs(tap.value) == pytest.approx(1.0)
        expected = cmath.exp(1j * 2 * math.pi * radio.f_c * (1.0 / SPEED_OF_LIGHT))
        assert tap.value == pytest.approx(expected, abs=1e-9)

    def test_magnitude_follows_path_gain(self):
        tap = make_tap(los(100.0), 0j, RadioConfig(), 12.0)
        assert abs(tap.value) == pytest.approx(1e-4)

    def test_matches_closed_form(self):
        radio = RadioConfig()
        rayleigh = 0.002 - 0.001j
        tap = make_tap(nlos(120.0, 0.6), rayleigh, radio, 20.0)
        f_d = radio.f_c * 20.0 * 0.6 / 3.0e8
        gamma = rayleigh + 1 / 120.0**2
        expected = gamma * cmath.exp(1j * 2 * math.pi * (radio.f_c + f_d) * 120.0 / SPEED_OF_LIGHT)
        assert tap.doppler_hz == pytest.approx(f_d)
        assert tap.value == pytest.approx(expected, abs=1e-12)
        assert tap.gamma == pytest.approx(gamma)

    def test_pure_los_when_scatter_disabled(self, rng):
        radio = RadioConfig(rayleigh_var=0.0)
        assert draw_rayleigh(35.0, radio, rng) == 0j
        tap = make_tap(los(35.0), draw_rayleigh(35.0, radio, rng), radio, 0.0)
        assert abs(tap.value) == pytest.approx(path_gain(35.0))

    def test_scatter_power_scales_with_distance(self, rng):
        radio = RadioConfig(rayleigh_var=0.5)
        draws = np.array([draw_rayleigh(10.0, radio, rng) for _ in range(20000)])
        assert np.mean(np.abs(draws) ** 2) == pytest.approx(1e-4, rel=0.05)
        assert abs(np.mean(draws)) < 5e-4


class TestTapVector:
    def test_short_excess_delay_collapses_onto_first_tap(self):
        radio = RadioConfig(n_rays=2)
        taps = [make_tap(los(35.0), 0j, radio, 0.0), make_tap(nlos(135.0), 0j, radio, 0.0)]
        g = tap_vector(taps, radio)
        assert g[1] == 0
        assert g[0] == pytest.approx(taps[0].value + taps[1].value)

    def test_long_excess_delay_is_clipped_to_last_tap(self):
        radio = RadioConfig(n_rays=2)
        taps = [make_tap(los(35.0), 0j, radio, 0.0), make_tap(nlos(635.0), 0j, radio, 0.0)]
        g = tap_vector(taps, radio)
        assert g[0] == pytest.approx(taps[0].value)
        assert g[1] == pytest.approx(taps[1].value)

    def test_matrix_rows_follow_doppler(self):
        radio = RadioConfig(n_rays=2)
        taps = [make_tap(los(20.0), 0j, radio, 10.0), make_tap(nlos(620.0, -0.5), 0j, radio, 10.0)]
        times = np.arange(4) * 5e-4
        G = tap_matrix(taps, radio, times)
        assert G.shape == (4, 2)
        for row, t in zip(G, times):
            np.testing.assert_allclose(row, tap_vector(taps, radio, t), atol=1e-15)

    def test_empty(self):
        radio = RadioConfig(n_rays=3)
        assert np.all(tap_vector([], radio) == 0)
        assert tap_matrix([], radio, [0.0, 1.0]).shape == (2, 3)


class TestReceivedSample:
    @pytest.fixture
    def radio(self):
        return RadioConfig(tx_power_p1=4.0, jam_power_p2=9.0, n_rays=2)

    @pytest.fixture
    def taps(self, radio):
        tx = [make_tap(los(35.0), 0.001j, radio, 0.0), make_tap(nlos(635.0), 0j, radio, 0.0)]
        jam = [make_tap(los(20.0), -0.002, radio, 5.0), make_tap(nlos(620.0, 0.3), 0j, radio, 5.0)]
        return tx, jam

    def test_tx_only_is_a_fir_of_the_pilots(self):
        radio = RadioConfig(jam_power_p2=0.0, n_rays=1)
        tap = make_tap(los(35.0), 0j, radio, 0.0)
        jam_tap = make_tap(los(50.0), 0j, radio, 0.0)
        y = received_sample([tap], [jam_tap], [1.0, -1.0], [1.0, 1.0], radio, None, noise=0.0)
        assert y == pytest.approx(np.sqrt(radio.tx_power_p1) * tap.value * -1.0)

    def test_most_recent_symbol_weights_first_tap(self, radio, taps):
        tx, jam = taps
        quiet = replace(radio, jam_power_p2=0.0)
        g1 = tap_vector(tx, quiet)
        y = received_sample(tx, jam, [1.0, 1.0, -1.0], [1.0, 1.0, 1.0], quiet, None, noise=0.0)
        assert y == pytest.approx(2.0 * (g1[0] * -1.0 + g1[1] * 1.0))

    def test_only_noise_when_both_powers_are_zero(self, radio, taps):
        silent = replace(radio, tx_power_p1=0.0, jam_power_p2=0.0)
        y = received_sample(*taps, [1.0, -1.0], [1.0, -1.0], silent, None, noise=0.3 + 0.1j)
        assert y == pytest.approx(0.3 + 0.1j)
        seeded = received_sample(*taps, [1.0, -1.0], [1.0, -1.0], silent, np.random.default_rng(5))
        assert seeded == pytest.approx(complex(complex_noise(silent.noise_power, None, np.random.default_rng(5))))

    def test_links_superpose(self, radio, taps):
        w = 0.01 + 0.02j
        x, s = [1.0, -1.0, 1.0], [-1.0, -1.0, 1.0]
        both = received_sample(*taps, x, s, radio, None, noise=w)
        tx_only = received_sample(*taps, x, s, replace(radio, jam_power_p2=0.0), None, noise=w)
        jam_only = received_sample(*taps, x, s, replace(radio, tx_power_p1=0.0), None, noise=w)
        assert both == pytest.approx(tx_only + jam_only - w)

    def test_tap_count_mismatch(self, radio, taps):
        tx, jam = taps
        with pytest.raises(ShapeError):
            received_sample(tx[:1], jam, [1.0, 1.0], [1.0, 1.0], radio, None, noise=0.0)
        with pytest.raises(ShapeError):
            received_sample(tx, jam, [1.0], [1.0, 1.0], radio, None, noise=0.0)


class TestNoise:
    def test_variance_and_circularity(self, rng):
        w = complex_noise(2.0, 200_000, rng)
        assert np.mean(np.abs(w) ** 2) == pytest.approx(2.0, rel=0.02)
        assert np.var(w.real) == pytest.approx(1.0, rel=0.02)
        assert np.var(w.imag) == pytest.approx(1.0, rel=0.02)
        assert abs(np.mean(w)) < 0.02


class TestRadioConfig:
    def test_defaults(self):
        radio = RadioConfig()
        assert radio.f_c == 5.9e9
        assert mw_to_dbm(radio.tx_power_p1 * path_gain(35.0) ** 2 / radio.noise_power) == pytest.approx(20.0)

    @pytest.mark.parametrize("kwargs,key", [
        ({"n_rays": 0}, "n_rays"),
        ({"noise_power": -1.0}, "noise_power"),
        ({"modulation": "QPSK"}, "modulation"),
        ({"carrier_sense_dbm": -90.0}, "carrier_sense_dbm"),
    ])
    def test_invalid(self, kwargs, key):
        with pytest.raises(ConfigError) as e:
            RadioConfig(**kwargs)
        assert e.value.key == key
