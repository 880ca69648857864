"""
Pilot-aided estimation of the combined Tx+jammer tap vector and of the
jammer-receiver relative speed from the Doppler rotation of the jammer's
line-of-sight tap across consecutive pilot blocks.

Pilot blocks carry a cyclic prefix, so the K x N design matrix is circulant
in the pilot sequence: X[k, n] = pilots[(k - n) mod K].
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from jamscope.sim.channel import DOPPLER_REFERENCE_C, complex_noise
from jamscope.util.errors import (
    ConfigError, ConditioningError, DomainError, ShapeError, UndefinedInputError, UnderdeterminedError,
)
from jamscope.util.logger import get_logger

logger = get_logger(__name__)

MAX_CONDITION = 1e10
MIN_FFT_POINTS = 8192


@dataclass
class EstimatorConfig:
    pilot_length: int = 32
    block_interval: float = 5e-4
    # prior variance of each combined tap, in sqrt(mW) units squared
    tap_prior: float = 1e-4
    # detection threshold in std of the noise-only coherent amplitude
    floor_sigmas: float = 4.0
    pilot_pattern: str = "pn"
    pilot_seed: int = 7
    calibration_blocks: int = 400

    def __post_init__(self):
        if self.pilot_length < 1:
            raise ConfigError("pilot_length", "pilot_length must be >= 1")
        if not self.block_interval > 0:
            raise ConfigError("block_interval", "block_interval must be positive")
        if not self.tap_prior > 0:
            raise ConfigError("tap_prior", "tap_prior must be positive")
        if self.pilot_pattern not in ("pn", "ones"):
            raise ConfigError("pilot_pattern", f"pilot_pattern must be 'pn' or 'ones', got {self.pilot_pattern!r}")
        if not self.floor_sigmas > 0:
            raise ConfigError("floor_sigmas", "floor_sigmas must be positive")
        if self.calibration_blocks < 2:
            raise ConfigError("calibration_blocks", "calibration_blocks must be >= 2")


class EstimateStatus(str, Enum):
    OK = "ok"
    NO_SIGNAL = "no_jammer_signal"


@dataclass
class PilotBlock:
    pilots: np.ndarray
    received: np.ndarray
    noise_cov: float
    n_rays: int
    tap_prior: float = 1e-4

    def __post_init__(self):
        self.pilots = np.asarray(self.pilots, dtype=float)
        self.received = np.asarray(self.received, dtype=complex)
        if self.pilots.size <= 2 * self.n_rays:
            raise UnderdeterminedError(
                f"pilot block of length {self.pilots.size} cannot resolve {self.n_rays} taps (need K > 2N)")
        if self.received.shape[-1] != self.pilots.size:
            raise ShapeError(f"received length {self.received.shape[-1]} != pilot length {self.pilots.size}")
        if self.noise_cov < 0:
            raise DomainError("noise_cov must be >= 0")


@dataclass(frozen=True)
class SpeedEstimate:
    delta_u_hat: float
    f_d_hat: float
    # rms deviation (radians) of the block-to-block phase steps from the estimated step
    quality: float
    status: EstimateStatus = EstimateStatus.OK
    amplitude: float = 0.0

    @property
    def detected(self):
        return self.status == EstimateStatus.OK


def pilot_sequence(config):
    if config.pilot_pattern == "ones":
        return np.ones(config.pilot_length)
    rng = np.random.default_rng(np.random.SeedSequence(config.pilot_seed))
    return rng.choice([-1.0, 1.0], size=config.pilot_length)


def design_matrix(pilots, n_rays):
    pilots = np.asarray(pilots, dtype=float)
    k = np.arange(pilots.size)[:, None]
    n = np.arange(n_rays)[None, :]
    return pilots[(k - n) % pilots.size].astype(complex)


def mmse_weights(X, noise_cov, tap_prior):
    """N x K matrix W with z_hat = W @ y.

    With noise_cov == 0 this is the least-squares pseudo-inverse.
    """
    gram = X.conj().T @ X
    cond = np.linalg.cond(gram)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise ConditioningError(f"pilot design matrix is singular (condition number {cond:.3g})")
    if cond > 1e6:
        logger.warning("pilot design matrix is poorly conditioned (condition number %.3g)", cond)
    if noise_cov > 0:
        gram = gram + (noise_cov / tap_prior) * np.eye(gram.shape[0])
    return np.linalg.solve(gram, X.conj().T)


def mmse_estimate_combined(block):
    X = design_matrix(block.pilots, block.n_rays)
    W = mmse_weights(X, block.noise_cov, block.tap_prior)
    return block.received @ W.T


def ls_estimate_combined(block):
    X = design_matrix(block.pilots, block.n_rays)
    z, *_ = np.linalg.lstsq(X, block.received.T, rcond=None)
    return z.T


def separate_jammer_los(z_hat, gamma_1, p_1):
    """Removes the known Tx tap-0 coefficient from the tap-0 estimate(s).

    `z_hat` may be one tap vector or a (blocks, N) array; `gamma_1` is the
    receiver-known Tx coefficient on tap 0.
    """
    z_hat = np.asarray(z_hat)
    return z_hat[..., 0] - gamma_1 * np.sqrt(p_1)


def _wrap(phase):
    return (phase + np.pi) % (2 * np.pi) - np.pi


def estimate_relative_speed(h2_los_seq, dt_block, f_c, floor=0.0):
    """Doppler of the jammer's LOS tap over consecutive block estimates.

    The strongest line of the zero-padded spectrum gives a coarse rotation per
    block, which the phase of the half-length lag product of the de-rotated
    sequence refines. `amplitude` is the coherent tone amplitude, compared
    against `floor` (see detection_floor).
    """
    h = np.asarray(h2_los_seq, dtype=complex)
    if h.size < 2:
        raise UndefinedInputError("need at least 2 consecutive block estimates")
    if not dt_block > 0:
        raise DomainError("dt_block must be positive")
    m = h.size
    n_fft = max(MIN_FFT_POINTS, 1 << int(np.ceil(np.log2(8 * m))))
    spectrum = np.fft.fft(h, n_fft) / m
    peak = int(np.argmax(np.abs(spectrum)))
    amplitude = float(np.abs(spectrum[peak]))
    if amplitude <= floor:
        return SpeedEstimate(0.0, 0.0, float("inf"), EstimateStatus.NO_SIGNAL, amplitude)
    coarse = 2 * np.pi * np.fft.fftfreq(n_fft)[peak]
    g = h * np.exp(-1j * coarse * np.arange(m))
    lag = max(1, m // 2)
    step = coarse + np.angle(np.sum(g[lag:] * np.conj(g[:-lag]))) / lag
    f_d = step / (2 * np.pi * dt_block)
    steps = np.angle(h[1:] * np.conj(h[:-1]))
    quality = float(np.sqrt(np.mean(_wrap(steps - step) ** 2)))
    delta_u = abs(f_d) * DOPPLER_REFERENCE_C / f_c
    return SpeedEstimate(float(delta_u), float(f_d), quality, EstimateStatus.OK, amplitude)


def calibrate_noise_floor(W, noise_power, n_blocks, rng):
    """Per-block std of the tap-0 estimate when only noise is present."""
    if noise_power == 0:
        return 0.0
    K = W.shape[1]
    noise = complex_noise(noise_power, (n_blocks, K), rng)
    z = noise @ W.T
    sigma = float(np.sqrt(np.mean(np.abs(z[:, 0]) ** 2)))
    logger.debug("calibrated estimator noise floor sigma=%.3g over %d blocks", sigma, n_blocks)
    return sigma


def detection_floor(block_sigma, n_blocks, floor_sigmas):
    """Threshold on the coherent amplitude of `n_blocks` estimates.

    Noise alone leaves each spectral line with std block_sigma / sqrt(n_blocks).
    """
    if n_blocks < 1:
        raise DomainError("n_blocks must be >= 1")
    return floor_sigmas * block_sigma / np.sqrt(n_blocks)
