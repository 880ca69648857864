"""
Complex-baseband Rician fading with inverse-square path gain and Doppler.

Each propagation ray carries a complex amplitude `gamma = rayleigh + 1/dist**2`
rotated by the carrier phase accumulated over its delay. Rays are quantized to
symbol-spaced taps, and the receiver sees the FIR convolution of the legitimate
and jamming symbol streams with their tap vectors plus AWGN.
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from jamscope.util.errors import DomainError, ShapeError, ConfigError

SPEED_OF_LIGHT = 2.99792458e8
# the rounded value the 655.5 Hz @ 120 km/h figure is computed with
DOPPLER_REFERENCE_C = 3.0e8

# 20 dB SNR for the unjammed 35 m link at 100 mW: P1 / 35**4 / 100
DEFAULT_NOISE_POWER = 100.0 / 35.0**4 / 100.0


class RayKind(str, Enum):
    LOS = "LOS"
    NLOS = "NLOS"


@dataclass(frozen=True)
class RayGeometry:
    ray_kind: RayKind
    dist: float
    aod_cos: float

    def __post_init__(self):
        if not self.dist > 0:
            raise DomainError(f"ray distance must be positive, got {self.dist}")
        if abs(self.aod_cos) > 1.0 + 1e-12:
            raise DomainError(f"aod_cos must lie in [-1, 1], got {self.aod_cos}")

    @property
    def excess_delay(self):
        return self.dist / SPEED_OF_LIGHT


@dataclass(frozen=True)
class ChannelTap:
    rayleigh: complex
    geometry: RayGeometry
    value: complex
    doppler_hz: float = 0.0

    @property
    def gamma(self):
        """Complex amplitude before the carrier rotation, known at the receiver."""
        return self.rayleigh + path_gain(self.geometry.dist)


@dataclass
class RadioConfig:
    f_c: float = 5.9e9
    tx_power_p1: float = 100.0
    jam_power_p2: float = 100.0
    noise_power: float = DEFAULT_NOISE_POWER
    n_rays: int = 2
    modulation: str = "BPSK"
    symbol_duration: float = 1e-6
    # per complex dimension, multiplied by path_gain(dist)**2
    rayleigh_var: float = 0.5
    carrier_sense_dbm: float = -85.0

    def __post_init__(self):
        if not self.f_c > 0:
            raise ConfigError("f_c", f"f_c must be positive, got {self.f_c}")
        for key in ("tx_power_p1", "jam_power_p2", "noise_power", "rayleigh_var"):
            if getattr(self, key) < 0:
                raise ConfigError(key, f"{key} must be >= 0, got {getattr(self, key)}")
        if self.n_rays < 1:
            raise ConfigError("n_rays", f"n_rays must be >= 1, got {self.n_rays}")
        if self.symbol_duration <= 0:
            raise ConfigError("symbol_duration", "symbol_duration must be positive")
        if self.modulation.upper() != "BPSK":
            raise ConfigError("modulation", f"unsupported modulation {self.modulation!r}, only BPSK")
        if not -85.0 <= self.carrier_sense_dbm <= -69.0:
            raise ConfigError("carrier_sense_dbm", "carrier_sense_dbm must lie in [-85, -69] dBm")


def doppler_shift(delta_u, aod_cos, f_c, c=DOPPLER_REFERENCE_C):
    """Doppler shift in Hz seen on a ray leaving at angle acos(aod_cos)."""
    return f_c * delta_u * aod_cos / c


def path_gain(dist):
    if not dist > 0:
        raise DomainError(f"degenerate geometry: dist must be positive, got {dist}")
    return 1.0 / dist**2


def mw_to_dbm(p_mw):
    return 10.0 * np.log10(p_mw)


def dbm_to_mw(p_dbm):
    return 10.0 ** (p_dbm / 10.0)


def draw_rayleigh(dist, radio, rng):
    """Zero-mean circular complex Gaussian scatter component for one ray."""
    if radio.rayleigh_var == 0:
        return 0j
    scale = np.sqrt(radio.rayleigh_var) * path_gain(dist)
    return complex(scale * rng.standard_normal(), scale * rng.standard_normal())


def make_tap(geometry, rayleigh, radio, delta_u):
    f_d = doppler_shift(delta_u, geometry.aod_cos, radio.f_c)
    gamma = rayleigh + path_gain(geometry.dist)
    phase = 2 * np.pi * (radio.f_c + f_d) * geometry.excess_delay
    value = complex(gamma * np.exp(1j * phase))
    return ChannelTap(rayleigh=complex(rayleigh), geometry=geometry, value=value, doppler_hz=float(f_d))


def tap_index(tap, reference_delay, radio):
    """Quantized excess delay relative to `reference_delay`, clipped to the last tap."""
    lag = (tap.geometry.excess_delay - reference_delay) / radio.symbol_duration
    return int(min(max(round(lag), 0), radio.n_rays - 1))


def tap_vector(taps, radio, t=0.0):
    """Aggregates rays into an N-length symbol-spaced tap vector.

    Rays whose excess delay (relative to the earliest ray) is shorter than one
    symbol collapse onto tap 0. `t` advances each ray by its own Doppler.
    """
    if len(taps) == 0:
        return np.zeros(radio.n_rays, dtype=complex)
    reference = min(tap.geometry.excess_delay for tap in taps)
    g = np.zeros(radio.n_rays, dtype=complex)
    for tap in taps:
        g[tap_index(tap, reference, radio)] += tap.value * np.exp(2j * np.pi * tap.doppler_hz * t)
    return g


def tap_matrix(taps, radio, times):
    """(len(times), N) tap vectors evaluated at each block time."""
    times = np.asarray(times, dtype=float)
    out = np.zeros((times.size, radio.n_rays), dtype=complex)
    if len(taps) == 0:
        return out
    reference = min(tap.geometry.excess_delay for tap in taps)
    for tap in taps:
        n = tap_index(tap, reference, radio)
        out[:, n] += tap.value * np.exp(2j * np.pi * tap.doppler_hz * times)
    return out


def complex_noise(variance, size, rng):
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def received_sample(taps_tx, taps_jam, pilot_symbols, jam_symbols, radio, rng, noise=None):
    """One received baseband sample: both links convolved with their symbols plus AWGN.

    The most recent symbol is the last element of each sequence; tap n weights
    the symbol n positions back.
    """
    if len(taps_tx) != radio.n_rays or len(taps_jam) != radio.n_rays:
        raise ShapeError(f"expected {radio.n_rays} taps per link, got {len(taps_tx)} and {len(taps_jam)}")
    x = np.asarray(pilot_symbols)
    s = np.asarray(jam_symbols)
    if x.size < radio.n_rays or s.size < radio.n_rays:
        raise ShapeError(f"symbol sequences must cover {radio.n_rays} taps")
    g1 = tap_vector(taps_tx, radio)
    g2 = tap_vector(taps_jam, radio)
    window_x = x[::-1][:radio.n_rays]
    window_s = s[::-1][:radio.n_rays]
    y = np.sqrt(radio.tx_power_p1) * np.dot(g1, window_x) + np.sqrt(radio.jam_power_p2) * np.dot(g2, window_s)
    if noise is None:
        noise = complex_noise(radio.noise_power, None, rng) if radio.noise_power > 0 else 0j
    return complex(y + noise)
